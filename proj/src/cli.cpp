#include "northcott/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "northcott/abelian.hpp"
#include "northcott/algebraic.hpp"
#include "northcott/dynamics.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/heights.hpp"
#include "northcott/northcott.hpp"
#include "northcott/real.hpp"
#include "northcott/serialize.hpp"
#include "northcott/towers.hpp"

namespace northcott::cli {

namespace {

// Thrown for bad flag values that CLI11 cannot see.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

constexpr unsigned kDigits = 15;

mpq_class parse_rational_flag(const std::string& name, const std::string& text) {
    mpq_class v;
    if (!parse_decimal(text, v)) throw UsageError(name + ": not a decimal or fraction: " + text);
    return v;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

json header(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
    } else if (j.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + scalar_text(j[i]);
        rows.emplace_back(prefix, s);
    } else {
        rows.emplace_back(prefix, scalar_text(j));
    }
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void print_table(const Table& t, Format format, std::ostream& out) {
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_cell(t.columns[i]);
        out << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
            out << "\n";
        }
        return;
    }
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            s += cells[i];
            if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out << s << "\n";
    };
    line(t.columns);
    for (const auto& r : t.rows) line(r);
}

// Record-shaped output: JSON as is, csv/table as flattened key/value rows.
void emit(const json& j, Format format, std::ostream& out, const std::optional<Table>& listing = std::nullopt) {
    if (format == Format::Json) {
        out << j.dump(2) << "\n";
        return;
    }
    if (listing) {
        print_table(*listing, format, out);
        return;
    }
    Table t{{"key", "value"}, {}};
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    for (auto& [k, v] : rows) t.rows.push_back({k, v});
    print_table(t, format, out);
}

json element_json(const NorthcottElement& e) {
    return {{"value", e.value.to_string()},
            {"minpoly", e.value.minpoly().to_string()},
            {"root_index", e.value.root_index()},
            {"degree", e.value.degree()},
            {"height", interval_json(e.height, kDigits)}};
}

Table element_table(const std::vector<NorthcottElement>& elements) {
    Table t{{"minpoly", "root_index", "degree", "height_lo", "height_hi", "height_mid"}, {}};
    for (const auto& e : elements) {
        json h = interval_json(e.height, kDigits);
        t.rows.push_back({e.value.minpoly().to_string(), std::to_string(e.value.root_index()),
                          std::to_string(e.value.degree()), h["lo"], h["hi"], h["mid"].dump()});
    }
    return t;
}

AlgebraicNumber parse_height_input(const std::string& text, std::optional<std::size_t> index) {
    if (text.find('[') != std::string::npos) {
        if (index) throw UsageError("root index given both in the expression and by --root-index");
        return parse_algebraic(text);
    }
    RationalFunction r = parse_rational_function(text);
    if (!r.den.is_constant()) throw DomainError("expected a polynomial, a rational number or poly[index]");
    if (r.num.is_constant()) {
        if (index && *index != 0) throw DomainError("a rational number has only root index 0");
        mpq_class v(r.num[0], r.den[0]);
        v.canonicalize();
        return AlgebraicNumber::rational(v);
    }
    IntPoly f = r.num.canonical();
    if (!is_irreducible(f)) throw DomainError("polynomial " + f.to_string() + " is reducible; give a minimal polynomial");
    return AlgebraicNumber(f, index.value_or(0));
}

json field_summary(const AbelianField& f) {
    json factors = json::array();
    for (const auto& [p, e] : f.discriminant_factors()) factors.push_back({to_json(p), e});
    auto p = f.max_ramified_prime();
    return {{"degree", f.degree()},
            {"conductor", to_json(f.modulus())},
            {"discriminant", to_json(f.discriminant())},
            {"discriminant_factors", factors},
            {"max_ramified_prime", p ? json(to_json(*p)) : json(nullptr)},
            {"field", field_to_json(f)}};
}

json bounds_json(const HeightBounds& b) {
    return {{"c_lower", interval_json(b.c_lower, kDigits)},
            {"c_upper", interval_json(b.c_upper, kDigits)},
            {"lower_scale", to_json(b.lower_scale)},
            {"upper_scale", to_json(b.upper_scale)},
            {"threshold", interval_json({b.threshold(), b.threshold()}, kDigits)}};
}

json numbers_json(const std::vector<AlgebraicNumber>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(x.to_string());
    return a;
}

json cycles_json(const std::vector<std::vector<AlgebraicNumber>>& cycles) {
    json a = json::array();
    for (const auto& c : cycles) a.push_back(numbers_json(c));
    return a;
}

std::vector<AlgebraicNumber> parse_point_set(const std::string& text) {
    std::vector<AlgebraicNumber> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            out.push_back(parse_height_input(part, std::nullopt));
        } catch (const ParseError& e) {
            throw ParseError(start + e.position(), e.detail());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json step_checks_json(const StepReport& r) {
    return {{"step", r.step},
            {"quantity", interval_json(r.quantity, kDigits)},
            {"p_prev", to_json(r.p_prev)},
            {"disjoint", r.disjoint},
            {"exceeds_prev", r.exceeds_prev},
            {"increasing", r.increasing},
            {"escalation", r.escalation},
            {"ok", r.ok()}};
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message,
                 std::optional<std::size_t> position = std::nullopt) {
    json j = {{"error", kind}, {"message", message}};
    if (position) j["position"] = *position;
    err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heights, Northcott sets, abelian field towers and arithmetic dynamics", "northcott"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    cfg.workers = default_workers();
    std::string format = "json", tol_text = "1e-9";
    app.add_option("--format", format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--workers", cfg.workers, "worker threads (default: NORTHCOTT_WORKERS or all cores)")
        ->check(CLI::Range(1U, 1024U));
    app.add_option("--budget", cfg.budget, "maximum coefficient vectors an enumeration may visit")
        ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    app.add_option("--tol", tol_text, "width of reported height enclosures");

    // height
    auto* height = app.add_subcommand("height", "Weil height of an algebraic number");
    std::string expr;
    std::optional<std::size_t> root_index;
    height->add_option("expr", expr, "minimal polynomial, poly[index] or a rational")->required();
    height->add_option("--root-index", root_index, "root in real-part order");

    // enumerate / bogomolov
    unsigned degree = 0;
    std::string height_text;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "all algebraic numbers with deg <= d and h < T");
    enumerate_cmd->add_option("--degree", degree)->required()->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("--height", height_text)->required();
    auto* bogomolov = app.add_subcommand("bogomolov", "torsion and smallest positive height below T");
    bogomolov->add_option("--degree", degree)->required()->check(CLI::PositiveNumber);
    bogomolov->add_option("--height", height_text)->required();

    // field
    auto* field = app.add_subcommand("field", "abelian number fields");
    field->require_subcommand(1);
    std::string field_text, lower_text, upper_text, prime_text;
    auto* disc = field->add_subcommand("disc", "discriminant by the conductor-discriminant formula");
    disc->add_option("field", field_text, "e.g. 'sqrt(3)*sqrt(-83)', 'zeta(8)', 'cyclic(7,3)'")->required();
    auto* local = field->add_subcommand("local", "local degree e*f at a prime");
    local->add_option("field", field_text)->required();
    local->add_option("--prime", prime_text)->required();
    auto* lattice = field->add_subcommand("lattice", "every subfield");
    lattice->add_option("field", field_text)->required();
    auto* reldisc = field->add_subcommand("reldisc", "norm of the relative discriminant of upper/lower");
    reldisc->add_option("--lower", lower_text)->required();
    reldisc->add_option("--upper", upper_text)->required();

    // tower
    auto* tower = app.add_subcommand("tower", "field towers under the prime escalation condition");
    tower->require_subcommand(1);
    std::string groups_text, start_text = "2", out_path, cert_path;
    bool verify_flag = false;
    auto* build = tower->add_subcommand("build", "search primes and emit a certificate");
    build->add_option("--groups", groups_text, "e.g. 2,2,2 or 2x3,2")->required();
    build->add_option("--start", start_text, "smallest prime the first step may use");
    build->add_flag("--verify", verify_flag, "exit 1 unless every check passes");
    build->add_option("--out", out_path, "also write the certificate to this file");
    auto* verify = tower->add_subcommand("verify", "re-check a certificate without searching");
    verify->add_option("--cert", cert_path)->required();

    // dyn
    auto* dyn = app.add_subcommand("dyn", "rational maps over Q");
    dyn->require_subcommand(1);
    std::string map_text, set_text;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    auto* constants = dyn->add_subcommand("constants", "c_lower and c_upper");
    constants->add_option("--map", map_text)->required();
    constants->add_option("--validate", samples, "check on this many random points");
    constants->add_option("--seed", seed);
    auto* preperiodic = dyn->add_subcommand("preperiodic", "all preperiodic points of bounded degree");
    preperiodic->add_option("--map", map_text)->required();
    preperiodic->add_option("--degree", degree)->required()->check(CLI::PositiveNumber);
    auto* check_p = dyn->add_subcommand("check-p", "test f(X) = X for a finite set");
    check_p->add_option("--map", map_text)->required();
    check_p->add_option("--set", set_text, "comma-separated points")->required();
    auto* classify = dyn->add_subcommand("classify-r", "Moebius or finiteness applies");
    classify->add_option("--map", map_text)->required();

    std::vector<std::string> argv_store{"northcott"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, "usage", e.what());
        return kUsage;
    }

    try {
        cfg.format = format == "csv" ? Format::Csv : format == "table" ? Format::Table : Format::Json;
        cfg.tolerance = parse_rational_flag("--tol", tol_text);
        if (cfg.tolerance <= 0) throw UsageError("--tol must be positive");
        EnumerateOptions eo;
        eo.workers = cfg.workers;
        eo.budget = cfg.budget;
        eo.height_tol = cfg.tolerance;

        if (height->parsed()) {
            cfg.subcommand = "height";
            AlgebraicNumber a = parse_height_input(expr, root_index);
            Disk d = a.disk_at(cfg.tolerance);
            json j = header("height");
            j["input"] = expr;
            j["value"] = a.to_string();
            j["minpoly"] = a.minpoly().to_string();
            j["root_index"] = a.root_index();
            j["degree"] = a.degree();
            j["torsion"] = a.is_torsion();
            j["root"] = {{"re", interval_json({d.re - d.radius, d.re + d.radius}, kDigits)},
                         {"im", interval_json({d.im - d.radius, d.im + d.radius}, kDigits)}};
            j["mahler_measure"] = interval_json(mahler_measure(a.minpoly(), cfg.tolerance), kDigits);
            j["height"] = interval_json(weil_height(a, cfg.tolerance), kDigits);
            emit(j, cfg.format, out);
            return kOk;
        }
        if (enumerate_cmd->parsed() || bogomolov->parsed()) {
            const mpq_class T = parse_rational_flag("--height", height_text);
            if (enumerate_cmd->parsed()) {
                NorthcottSet s = enumerate(degree, T, eo);
                json j = header("enumerate");
                j["degree_bound"] = degree;
                j["height_bound"] = rational_string(T);
                j["count"] = s.elements.size();
                json elements = json::array();
                for (const auto& e : s.elements) elements.push_back(element_json(e));
                j["elements"] = elements;
                emit(j, cfg.format, out, element_table(s.elements));
                return kOk;
            }
            BogomolovReport r = bogomolov_scan(degree, T, eo);
            json j = header("bogomolov");
            j["degree_bound"] = degree;
            j["height_bound"] = rational_string(T);
            j["zero_present"] = r.zero_present;
            j["torsion_count"] = r.torsion_count;
            j["nontorsion_count"] = r.nontorsion.size();
            j["min_nontorsion_height"] =
                r.min_nontorsion_height ? interval_json(*r.min_nontorsion_height, kDigits) : json(nullptr);
            json by = json::array();
            for (const auto& f : r.min_attained_by) by.push_back(f.to_string());
            j["min_attained_by"] = by;
            json nt = json::array();
            for (const auto& e : r.nontorsion) nt.push_back(element_json(e));
            j["nontorsion"] = nt;
            emit(j, cfg.format, out);
            return kOk;
        }
        if (field->parsed()) {
            if (disc->parsed()) {
                json j = header("field disc");
                j["input"] = field_text;
                j.update(field_summary(parse_field(field_text)));
                emit(j, cfg.format, out);
                return kOk;
            }
            if (local->parsed()) {
                AbelianField f = parse_field(field_text);
                mpz_class p;
                if (p.set_str(prime_text, 10) != 0) throw UsageError("--prime: not an integer: " + prime_text);
                auto [e, fdeg] = f.local_ef(p);
                json j = header("field local");
                j["input"] = field_text;
                j["prime"] = to_json(p);
                j["e"] = to_json(e);
                j["f"] = to_json(fdeg);
                j["local_degree"] = to_json(e * fdeg);
                j["degree"] = f.degree();
                emit(j, cfg.format, out);
                return kOk;
            }
            if (lattice->parsed()) {
                AbelianField f = parse_field(field_text);
                std::vector<AbelianField> subs = subfield_lattice(f);
                json j = header("field lattice");
                j["input"] = field_text;
                j["count"] = subs.size();
                json list = json::array();
                Table t{{"degree", "conductor", "discriminant", "field"}, {}};
                for (const auto& h : subs) {
                    list.push_back(field_summary(h));
                    t.rows.push_back({std::to_string(h.degree()), h.modulus().get_str(), h.discriminant().get_str(),
                                      field_to_json(h).dump()});
                }
                j["subfields"] = list;
                emit(j, cfg.format, out, t);
                return kOk;
            }
            AbelianField lo = parse_field(lower_text), hi = parse_field(upper_text);
            json j = header("field reldisc");
            j["lower"] = lower_text;
            j["upper"] = upper_text;
            j["N"] = to_json(relative_discriminant_norm(lo, hi));
            j["relative_degree"] = hi.degree() / lo.degree();
            j["disc_lower"] = to_json(lo.discriminant());
            j["disc_upper"] = to_json(hi.discriminant());
            emit(j, cfg.format, out);
            return kOk;
        }
        if (tower->parsed()) {
            if (build->parsed()) {
                mpz_class start;
                if (start.set_str(start_text, 10) != 0 || start < 2) throw UsageError("--start: expected an integer >= 2");
                TowerSpec t = build_tower(parse_groups(groups_text), start);
                TowerReport r = verify_tower(t);
                json cert = tower_certificate(t, r);
                const std::string text = cert.dump(2) + "\n";
                if (!out_path.empty()) {
                    std::ofstream f(out_path, std::ios::binary);
                    if (!f) throw UsageError("cannot write " + out_path);
                    f << text;
                }
                if (cfg.format == Format::Json) {
                    out << text;
                } else {
                    Table tab{{"step", "primes", "N", "exponent", "quantity_lo", "quantity_hi", "p_prev", "ok"}, {}};
                    for (const auto& s : cert["steps"]) {
                        std::string ps;
                        for (const auto& p : cert["primes"][s["step"].get<std::size_t>() - 1]) ps += (ps.empty() ? "" : " ") + p.get<std::string>();
                        const json& c = s["checks"];
                        const bool ok = c["disjoint"].get<bool>() && c["exceeds_prev"].get<bool>() &&
                                        c["increasing"].get<bool>() && c["escalation"].get<bool>();
                        tab.rows.push_back({s["step"].dump(), ps, s["N"], s["exponent"], s["quantity_lo"], s["quantity_hi"],
                                            s["p_prev"], ok ? "true" : "false"});
                    }
                    print_table(tab, cfg.format, out);
                }
                return verify_flag && !r.ok() ? kVerificationFailed : kOk;
            }
            const std::string text = read_file(cert_path);
            json cert;
            try {
                cert = json::parse(text);
            } catch (const json::parse_error& e) {
                throw ParseError(e.byte == 0 ? 0 : e.byte - 1, "certificate is not JSON");
            }
            CertificateCheck c = verify_certificate(cert);
            json j = header("tower verify");
            j["ok"] = c.ok();
            j["reproduced"] = c.reproduced;
            j["byte_identical"] = cert.dump(2) + "\n" == text;
            j["mismatch"] = c.mismatch;
            json steps = json::array();
            for (const auto& s : c.report.steps) steps.push_back(step_checks_json(s));
            j["steps"] = steps;
            emit(j, cfg.format, out);
            return c.ok() ? kOk : kVerificationFailed;
        }
        // dyn
        RationalMap f = RationalMap::parse(map_text);
        json j;
        if (constants->parsed()) {
            HeightBounds b = height_constants(f);
            j = header("dyn constants");
            j["map"] = f.to_string();
            j["degree"] = f.degree();
            j.update(bounds_json(b));
            bool ok = true;
            if (samples > 0) {
                SampleValidation v = validate_height_constants(f, b, samples, seed, cfg.workers);
                j["validation"] = {{"samples", v.samples},
                                   {"seed", seed},
                                   {"poles_skipped", v.poles},
                                   {"lower_failures", v.lower_failures},
                                   {"upper_failures", v.upper_failures},
                                   {"threshold_checked", v.threshold_checked},
                                   {"threshold_failures", v.threshold_failures},
                                   {"ok", v.ok()}};
                ok = v.ok();
            }
            emit(j, cfg.format, out);
            return ok ? kOk : kVerificationFailed;
        }
        if (preperiodic->parsed()) {
            PreperiodicSet s = preperiodic_points(f, degree, eo);
            j = header("dyn preperiodic");
            j["map"] = f.to_string();
            j["degree"] = f.degree();
            j["degree_bound"] = degree;
            j.update(bounds_json(s.bounds));
            j["search_height"] = rational_string(s.search_height);
            j["count"] = s.points.size();
            j["points"] = numbers_json(s.points);
            j["cycles"] = cycles_json(s.cycles);
            json tails = json::array();
            for (const auto& [x, y] : s.tails) tails.push_back({x.to_string(), y.to_string()});
            j["tails"] = tails;
            Table t{{"point", "periodic", "image"}, {}};
            for (const auto& c : s.cycles) {
                for (std::size_t i = 0; i < c.size(); ++i) t.rows.push_back({c[i].to_string(), "true", c[(i + 1) % c.size()].to_string()});
            }
            for (const auto& [x, y] : s.tails) t.rows.push_back({x.to_string(), "false", y.to_string()});
            emit(j, cfg.format, out, t);
            return kOk;
        }
        if (check_p->parsed()) {
            std::vector<AlgebraicNumber> X = parse_point_set(set_text);
            PropertyPReport r = check_property_P_instance(f, X);
            j = header("dyn check-p");
            j["map"] = f.to_string();
            j["admissible"] = r.admissible;
            j["invariant"] = r.invariant;
            j["pole"] = r.pole;
            j["image"] = numbers_json(r.image);
            j["within_preperiodic"] = r.within_preperiodic ? json(*r.within_preperiodic) : json(nullptr);
            j["cycles"] = cycles_json(r.cycles);
            emit(j, cfg.format, out);
            return kOk;
        }
        RReport r = classify_R(f);
        j = header("dyn classify-r");
        j["map"] = f.to_string();
        j["degree"] = f.degree();
        j["class"] = r.kind == RClass::Moebius ? "moebius" : "finiteness_applies";
        j["threshold"] = r.bounds ? interval_json({r.bounds->threshold(), r.bounds->threshold()}, kDigits) : json(nullptr);
        emit(j, cfg.format, out);
        return kOk;
    } catch (const ParseError& e) {
        print_error(err, "parse", e.detail(), e.position());
        return kUsage;
    } catch (const BudgetExceeded& e) {
        print_error(err, "budget_exceeded", e.what());
        return kBudget;
    } catch (const UsageError& e) {
        print_error(err, "usage", e.what());
        return kUsage;
    } catch (const DomainError& e) {
        print_error(err, "domain", e.what());
        return kUsage;
    } catch (const PoleError& e) {
        print_error(err, "pole", e.what());
        return kUsage;
    } catch (const Unsupported& e) {
        print_error(err, "unsupported", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        print_error(err, "internal", e.what());
        return kInternal;
    }
}

}  // namespace northcott::cli
