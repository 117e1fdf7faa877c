#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "northcott/cli.hpp"

using namespace northcott;
using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void expect_golden(const std::string& name, const std::string& actual) {
    const std::filesystem::path path = std::filesystem::path(NORTHCOTT_GOLDEN_DIR) / name;
    if (const char* u = std::getenv("NORTHCOTT_UPDATE_GOLDEN"); u && std::string(u) == "1") {
        std::ofstream(path, std::ios::binary) << actual;
        return;
    }
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(actual, slurp(path)) << name;
}

double mid(const json& interval) { return interval["mid"].get<double>(); }

struct Golden {
    const char* file;
    std::vector<std::string> args;
};

const std::vector<Golden>& goldens() {
    static const std::vector<Golden> g{
        {"height_golden_ratio.json", {"height", "x^2 - x - 1", "--root-index", "0"}},
        {"height_two.json", {"height", "2"}},
        {"enumerate_d1_h07.json", {"enumerate", "--degree", "1", "--height", "0.7"}},
        {"enumerate_d2_h01.csv", {"enumerate", "--degree", "2", "--height", "0.1", "--format", "csv"}},
        {"enumerate_d2_h01.table", {"--format", "table", "enumerate", "--degree", "2", "--height", "0.1"}},
        {"bogomolov_d2_h03.json", {"bogomolov", "--degree", "2", "--height", "0.3"}},
        {"field_disc.json", {"field", "disc", "sqrt(3)*sqrt(-83)"}},
        {"field_local.json", {"field", "local", "zeta(15)", "--prime", "5"}},
        {"field_lattice.csv", {"--format", "csv", "field", "lattice", "sqrt(2)*sqrt(3)"}},
        {"field_reldisc.json", {"field", "reldisc", "--lower", "sqrt(3)", "--upper", "sqrt(3)*sqrt(-83)"}},
        {"tower_build_2_2.json", {"tower", "build", "--groups", "2,2", "--verify"}},
        {"dyn_constants.json", {"dyn", "constants", "--map", "(x^2+1)/x", "--validate", "500", "--seed", "7"}},
        {"dyn_preperiodic_x2_d2.json", {"dyn", "preperiodic", "--map", "x^2", "--degree", "2"}},
        {"dyn_preperiodic_x2m1_d1.table", {"--format", "table", "dyn", "preperiodic", "--map", "x^2-1", "--degree", "1"}},
        {"dyn_check_p.json", {"dyn", "check-p", "--map", "x^2", "--set", "0,1,x^2+x+1[0],x^2+x+1[1]"}},
        {"dyn_classify_r.json", {"dyn", "classify-r", "--map", "x^3-x"}},
    };
    return g;
}

}  // namespace

TEST(Cli, GoldenOutputs) {
    for (const auto& g : goldens()) {
        CliRun r = run(g.args);
        EXPECT_EQ(r.code, 0) << g.file << "\n" << r.err;
        EXPECT_TRUE(r.err.empty()) << g.file;
        expect_golden(g.file, r.out);
    }
}

TEST(Cli, SameOutputAtOneAndEightWorkers) {
    for (const auto& g : goldens()) {
        std::vector<std::string> one{"--workers", "1"}, eight{"--workers", "8"};
        one.insert(one.end(), g.args.begin(), g.args.end());
        eight.insert(eight.end(), g.args.begin(), g.args.end());
        EXPECT_EQ(run(one).out, run(eight).out) << g.file;
    }
}

TEST(Cli, HeightValues) {
    json j = json::parse(run({"height", "x^2 - x - 1", "--root-index", "1"}).out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_NEAR(mid(j["height"]), std::log((1 + std::sqrt(5.0)) / 2) / 2, 1e-12);
    EXPECT_NEAR(mid(j["root"]["re"]), (1 + std::sqrt(5.0)) / 2, 1e-12);
    EXPECT_LE(std::stod(j["height"]["lo"].get<std::string>()), mid(j["height"]));
    EXPECT_GE(std::stod(j["height"]["hi"].get<std::string>()), mid(j["height"]));

    j = json::parse(run({"height", "x^4 + 1"}).out);
    EXPECT_TRUE(j["torsion"].get<bool>());
    EXPECT_EQ(j["height"]["lo"], "0.000000000000000");
    EXPECT_EQ(j["height"]["hi"], "0.000000000000000");

    j = json::parse(run({"height", "x^3-2[2]"}).out);
    EXPECT_EQ(j["root_index"], 2);
    EXPECT_NEAR(mid(j["height"]), std::log(2.0) / 3, 1e-12);

    j = json::parse(run({"--tol", "1/1000", "height", "-3/7"}).out);
    EXPECT_EQ(j["value"], "-3/7");
    EXPECT_NEAR(mid(j["height"]), std::log(7.0), 1e-3);
}

TEST(Cli, EnumerateCounts) {
    CliRun csv = run({"--format", "csv", "enumerate", "--degree", "2", "--height", "0.1"});
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "minpoly,root_index,degree,height_lo,height_hi,height_mid");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 9);

    json j = json::parse(run({"enumerate", "--degree", "1", "--height", "7/10"}).out);
    EXPECT_EQ(j["count"], 7);
    EXPECT_EQ(j["elements"].size(), 7U);
    for (const auto& e : j["elements"]) {
        for (const char* k : {"minpoly", "root_index", "height"}) EXPECT_TRUE(e.contains(k));
    }
}

TEST(Cli, TowerRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "northcott_cli_test";
    std::filesystem::create_directories(dir);
    const std::string cert = (dir / "cert.json").string();

    CliRun build = run({"tower", "build", "--groups", "2,2", "--verify", "--out", cert});
    ASSERT_EQ(build.code, 0) << build.err;
    EXPECT_EQ(build.out, slurp(cert));
    json c = json::parse(build.out);
    EXPECT_EQ(c["primes"], json::parse(R"([["3"],["83"]])"));
    EXPECT_NEAR(c["steps"][0]["quantity_mid"].get<double>(), std::pow(3.0, 0.25), 1e-12);
    EXPECT_NEAR(c["steps"][1]["quantity_mid"].get<double>(), std::pow(83.0, 0.25), 1e-12);

    CliRun verify = run({"tower", "verify", "--cert", cert});
    EXPECT_EQ(verify.code, 0) << verify.err;
    json v = json::parse(verify.out);
    EXPECT_TRUE(v["ok"].get<bool>());
    EXPECT_TRUE(v["byte_identical"].get<bool>());

    // Same content with different whitespace still verifies, but not byte for byte.
    std::ofstream(cert, std::ios::binary) << c.dump() << "\n";
    v = json::parse(run({"tower", "verify", "--cert", cert}).out);
    EXPECT_TRUE(v["ok"].get<bool>());
    EXPECT_FALSE(v["byte_identical"].get<bool>());

    c["primes"][1][0] = "5";
    std::ofstream(cert, std::ios::binary) << c.dump(2) << "\n";
    CliRun bad = run({"tower", "verify", "--cert", cert});
    EXPECT_EQ(bad.code, 1);
    EXPECT_FALSE(json::parse(bad.out)["ok"].get<bool>());

    std::ofstream(cert, std::ios::binary) << "{\"schema\": 1,";
    CliRun garbled = run({"tower", "verify", "--cert", cert});
    EXPECT_EQ(garbled.code, 2);
    EXPECT_TRUE(json::parse(garbled.err).contains("position"));
    std::filesystem::remove_all(dir);
}

TEST(Cli, TableAndCsvForTowers) {
    CliRun t = run({"--format", "csv", "tower", "build", "--groups", "2,2"});
    ASSERT_EQ(t.code, 0);
    EXPECT_EQ(t.out.substr(0, t.out.find('\n')), "step,primes,N,exponent,quantity_lo,quantity_hi,p_prev,ok");
    EXPECT_NE(t.out.find("\n2,83,6889,8,"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    struct Case {
        std::vector<std::string> args;
        int code;
        const char* error;  // nullptr for success
    };
    const std::vector<Case> cases{
        {{}, 2, "usage"},
        {{"frobnicate"}, 2, "usage"},
        {{"height"}, 2, "usage"},
        {{"height", "x^2+*1"}, 2, "parse"},
        {{"height", "x^2-1"}, 2, "domain"},
        {{"height", "x^2-2", "--root-index", "5"}, 2, "domain"},
        {{"--tol", "0", "height", "2"}, 2, "usage"},
        {{"--tol", "abc", "height", "2"}, 2, "usage"},
        {{"--format", "xml", "height", "2"}, 2, "usage"},
        {{"--workers", "0", "height", "2"}, 2, "usage"},
        {{"--budget", "0", "height", "2"}, 2, "usage"},
        {{"--budget", "10", "enumerate", "--degree", "2", "--height", "1"}, 3, "budget_exceeded"},
        {{"field", "disc", "sqrt(2)*zeta("}, 2, "parse"},
        {{"field", "local", "sqrt(2)", "--prime", "4"}, 2, "domain"},
        {{"field", "reldisc", "--lower", "sqrt(2)", "--upper", "sqrt(3)"}, 2, "domain"},
        {{"tower", "build", "--groups", "S3"}, 2, "unsupported"},
        {{"tower", "build", "--groups", "2,,2"}, 2, "parse"},
        {{"tower", "verify", "--cert", "/nonexistent/cert.json"}, 2, "usage"},
        {{"dyn", "preperiodic", "--map", "x+1", "--degree", "1"}, 2, "domain"},
        {{"dyn", "check-p", "--map", "1/x^2", "--set", "0"}, 0, nullptr},
        {{"dyn", "constants", "--map", "1/(x-x)"}, 2, "parse"},
        {{"--help"}, 0, nullptr},
    };
    for (const auto& c : cases) {
        CliRun r = run(c.args);
        std::string joined;
        for (const auto& a : c.args) joined += a + " ";
        EXPECT_EQ(r.code, c.code) << joined << "\n" << r.err;
        if (c.error) {
            json e = json::parse(r.err);
            EXPECT_EQ(e["error"], c.error) << joined << "\n" << r.err;
            EXPECT_TRUE(e.contains("message"));
        }
    }
}

TEST(Cli, ParseErrorPositions) {
    json e = json::parse(run({"height", "x^2 + 3*x + $"}).err);
    EXPECT_EQ(e["position"], 12);
    e = json::parse(run({"dyn", "check-p", "--map", "x^2", "--set", "0,1,x^^2"}).err);
    EXPECT_EQ(e["position"], 6);
    e = json::parse(run({"tower", "build", "--groups", "2,2x"}).err);
    EXPECT_EQ(e["error"], "parse");
    EXPECT_EQ(e["position"], 4);
}

TEST(Cli, OptionsAfterSubcommand) {
    EXPECT_EQ(run({"--format", "csv", "enumerate", "--degree", "1", "--height", "0.7"}).out,
              run({"enumerate", "--degree", "1", "--height", "0.7", "--format", "csv"}).out);
}

TEST(Cli, StartHint) {
    json c = json::parse(run({"tower", "build", "--groups", "2", "--start", "10"}).out);
    EXPECT_EQ(c["primes"][0][0], "11");
    EXPECT_EQ(run({"tower", "build", "--groups", "2", "--start", "1"}).code, 2);
}
