// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Oracles here avoid the code paths they check where that is practical.

#include <mpfr.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "northcott/abelian.hpp"
#include "northcott/algebraic.hpp"
#include "northcott/cli.hpp"
#include "northcott/cyclotomic.hpp"
#include "northcott/dynamics.hpp"
#include "northcott/heights.hpp"
#include "northcott/northcott.hpp"
#include "northcott/poly_parse.hpp"
#include "northcott/resultant.hpp"
#include "northcott/towers.hpp"

using namespace northcott;

namespace {

// Tolerances and time limits.
constexpr double kGoldenTol = 1e-6;
constexpr double kLogTwoTol = 1e-9;
constexpr double kStepTol = 1e-9;
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 10.0;
constexpr double kLimit3 = 60.0;
constexpr double kLimit6 = 120.0;
constexpr double kLimit8 = 120.0;
constexpr std::size_t kSamples = 10000;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// 256-bit MPFR value of an expression built by the callback.
double mp(const std::function<void(mpfr_t)>& build) {
    mpfr_t v;
    mpfr_init2(v, 256);
    build(v);
    double d = mpfr_get_d(v, MPFR_RNDN);
    mpfr_clear(v);
    return d;
}

double mid(const HeightInterval& h) { return mpq_class((h.lo + h.hi) / 2).get_d(); }

// Degree <= 2, h < T by a plain coefficient scan with long double roots.
// Rationals are reduced fractions; quadratics are primitive a x^2 + b x + c
// with non-square discriminant.
std::set<std::string> brute_force(unsigned d, double T) {
    std::set<std::string> out;
    const long B = static_cast<long>(std::floor(std::exp(T)));
    for (long q = 1; q <= B; ++q) {
        for (long p = -B; p <= B; ++p) {
            if (std::gcd(p, q) != 1) continue;
            if (std::max(std::labs(p), q) < std::exp(T)) out.insert(IntPoly{-p, q}.to_string() + "[0]");
        }
    }
    if (d < 2) return out;
    const double M = std::exp(2 * T);
    const long A = static_cast<long>(std::floor(M)), Bb = static_cast<long>(std::floor(2 * M));
    for (long a = 1; a <= A; ++a) {
        for (long b = -Bb; b <= Bb; ++b) {
            for (long c = -A; c <= A; ++c) {
                if (std::gcd(std::gcd(a, std::labs(b)), std::labs(c)) != 1) continue;
                const long disc = b * b - 4 * a * c;
                const long s = disc >= 0 ? static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc)))) : -1;
                if (s >= 0 && s * s == disc) continue;  // reducible
                std::complex<long double> sq = std::sqrt(std::complex<long double>(static_cast<long double>(disc), 0));
                std::complex<long double> r1 = (-static_cast<long double>(b) + sq) / (2.0L * a);
                std::complex<long double> r2 = (-static_cast<long double>(b) - sq) / (2.0L * a);
                long double m = a * std::max(1.0L, std::abs(r1)) * std::max(1.0L, std::abs(r2));
                if (m < M) {
                    out.insert(IntPoly{c, b, a}.to_string() + "[0]");
                    out.insert(IntPoly{c, b, a}.to_string() + "[1]");
                }
            }
        }
    }
    return out;
}

std::set<std::string> names(const std::vector<NorthcottElement>& xs) {
    std::set<std::string> out;
    for (const auto& x : xs) out.insert(x.value.minpoly().to_string() + "[" + std::to_string(x.value.root_index()) + "]");
    return out;
}

// f divides x^k - 1 for some k <= kmax.
bool divides_unit_power(const IntPoly& f, unsigned kmax) {
    for (unsigned k = 1; k <= kmax; ++k) {
        if (divide_exact(IntPoly::monomial(1, k) - IntPoly{1}, f)) return true;
    }
    return false;
}

void crit1(Outcome& o) {
    const double phi_h = mp([](mpfr_t v) {
        mpfr_sqrt_ui(v, 5, MPFR_RNDN);
        mpfr_add_ui(v, v, 1, MPFR_RNDN);
        mpfr_div_2ui(v, v, 1, MPFR_RNDN);
        mpfr_log(v, v, MPFR_RNDN);
        mpfr_div_2ui(v, v, 1, MPFR_RNDN);
    });
    const double log2 = mp([](mpfr_t v) { mpfr_const_log2(v, MPFR_RNDN); });
    const IntPoly golden{-1, -1, 1};
    for (std::size_t i = 0; i < 2; ++i) {
        HeightInterval h = weil_height(AlgebraicNumber(golden, i), mpq_class(1, 1000000000));
        o.require(std::abs(mid(h) - phi_h) <= kGoldenTol, "golden ratio root " + std::to_string(i));
        if (i == 1) o.detail << " h(phi)=" << std::setprecision(10) << mid(h);
    }
    HeightInterval h2 = weil_height(AlgebraicNumber::rational(2), mpq_class(1, 1000000000));
    o.require(std::abs(mid(h2) - log2) <= kLogTwoTol && h2.lo <= log2 + 1e-15 && h2.hi >= log2 - 1e-15, "h(2)");
    o.detail << " h(2)=" << mid(h2);
    std::size_t zeros = 0;
    for (unsigned long n = 1; n <= 12; ++n) {
        IntPoly f = cyclotomic(n);
        for (int i = 0; i < f.degree(); ++i) {
            HeightInterval h = weil_height(AlgebraicNumber(f, static_cast<std::size_t>(i)), mpq_class(1, 1000000000));
            o.require(h.lo == 0 && h.hi == 0, "h(zeta_" + std::to_string(n) + ") exactly 0");
            ++zeros;
        }
    }
    o.detail << " exact zeros=" << zeros;
}

NorthcottSet g_d2;  // criterion 2's second set, reused by criterion 8

void crit2(Outcome& o) {
    NorthcottSet s1 = enumerate(1, mpq_class(7, 10));
    g_d2 = enumerate(2, mpq_class(1, 10));
    o.require(s1.elements.size() == 7, "enumerate(1, 0.7) has 7 elements");
    o.require(g_d2.elements.size() == 9, "enumerate(2, 0.1) has 9 elements");
    o.require(names(s1.elements) == brute_force(1, 0.7), "degree 1 matches reduced-fraction oracle");
    o.require(names(g_d2.elements) == brute_force(2, 0.1), "degree 2 matches coefficient-box oracle");
    o.detail << " counts=" << s1.elements.size() << "," << g_d2.elements.size();
}

void crit3(Outcome& o) {
    NorthcottSet s = enumerate(3, mpq_class(1, 20));
    // enumerate(3, 0.05) is all torsion; a wider set also exercises h > 0.
    NorthcottSet wide = enumerate(3, mpq_class(1, 5));
    std::size_t zero = 0, nonzero = 0;
    std::set<std::string> torsion_found;
    std::vector<NorthcottElement> all = s.elements;
    all.insert(all.end(), wide.elements.begin(), wide.elements.end());
    for (const auto& e : all) {
        const IntPoly& f = e.value.minpoly();
        // phi(k) <= 3 forces k <= 6.
        const bool kronecker = f == IntPoly::x() || divides_unit_power(f, 6);
        const bool h_zero = e.height.lo == 0 && e.height.hi == 0;
        const bool h_pos = e.height.lo > 0;
        o.require(h_zero || h_pos, "height sign decided for " + e.value.to_string());
        o.require(h_zero == kronecker, "h = 0 iff zero or root of unity at " + e.value.to_string());
        if (h_zero) {
            ++zero;
            if (e.value.degree() <= 3) torsion_found.insert(e.value.to_string());
        } else {
            ++nonzero;
        }
    }
    // Converse: every zero and root of unity of degree <= 3 is present.
    std::set<std::string> expected;
    for (const IntPoly& f : {IntPoly{0, 1}, IntPoly{-1, 1}, IntPoly{1, 1}, IntPoly{1, 1, 1}, IntPoly{1, 0, 1}, IntPoly{1, -1, 1}}) {
        for (int i = 0; i < f.degree(); ++i) expected.insert(AlgebraicNumber(f, static_cast<std::size_t>(i)).to_string());
    }
    o.require(torsion_found == expected, "all zeros and roots of unity of degree <= 3 listed");
    o.detail << " elements=" << s.elements.size() << "+" << wide.elements.size() << " h=0:" << zero << " h>0:" << nonzero;
}

void crit4(Outcome& o) {
    for (long n : {5L, 8L, 12L, 15L}) {
        mpz_class from_field = abs(cyclotomic_field(mpz_class(n)).discriminant());
        mpz_class from_poly = abs(discriminant(cyclotomic(static_cast<unsigned long>(n))));
        o.require(from_field == from_poly, "n=" + std::to_string(n));
        o.detail << " n=" << n << ":" << from_field;
    }
}

void crit5(Outcome& o) {
    std::size_t chains = 0;
    for (const char* text : {"sqrt(2)*sqrt(3)", "sqrt(3)*sqrt(-83)"}) {
        AbelianField top = parse_field(text);
        // Biquadratic discriminant is the product of the three quadratic ones.
        mpz_class product = 1;
        std::vector<AbelianField> lattice = subfield_lattice(top);
        for (const auto& h : lattice) {
            if (h.degree() == 2) product *= h.discriminant();
        }
        o.require(abs(top.discriminant()) == abs(product), std::string("biquadratic oracle for ") + text);
        for (const auto& lo : lattice) {
            for (const auto& hi : lattice) {
                if (lo == hi || !hi.contains(lo)) continue;
                mpz_class N = relative_discriminant_norm(lo, hi);
                mpz_class rhs;
                mpz_pow_ui(rhs.get_mpz_t(), mpz_class(abs(lo.discriminant())).get_mpz_t(), hi.degree() / lo.degree());
                o.require(abs(hi.discriminant()) == N * rhs, "tower identity " + lo.to_string() + " in " + hi.to_string());
                ++chains;
            }
        }
    }
    mpz_class N = relative_discriminant_norm(quadratic_field(3), parse_field("sqrt(3)*sqrt(-83)"));
    o.require(N == 6889 && N == 83 * 83, "N = 6889 for Q(sqrt 3) in Q(sqrt 3, sqrt -83)");
    o.detail << " chains=" << chains << " N=" << N;
}

void crit6(Outcome& o) {
    TowerSpec t = build_tower({GroupSpec{{2}}, GroupSpec{{2}}});
    o.require(t.primes.size() == 2 && t.primes[0] == std::vector<mpz_class>{3} && t.primes[1] == std::vector<mpz_class>{83},
              "primes (3, 83)");
    TowerReport r = verify_tower(t);
    auto fourth_root = [](unsigned long n) {
        return mp([n](mpfr_t v) {
            mpfr_sqrt_ui(v, n, MPFR_RNDN);
            mpfr_sqrt(v, v, MPFR_RNDN);
        });
    };
    if (r.steps.size() == 2) {
        const double q1 = mid(r.steps[0].quantity), q2 = mid(r.steps[1].quantity);
        o.require(std::abs(q1 - fourth_root(3)) <= kStepTol, "step 1 = 3^(1/4)");
        o.require(std::abs(q2 - fourth_root(83)) <= kStepTol, "step 2 = 83^(1/4)");
        o.require(r.steps[1].quantity.lo > 3, "step 2 certified > 3");
        o.require(r.steps[1].quantity.lo > r.steps[0].quantity.hi, "strictly increasing");
        o.detail << std::setprecision(12) << " q=" << q1 << "," << q2;
    } else {
        o.require(false, "two steps");
    }
    o.require(r.ok(), "all step checks");
    auto start = std::chrono::steady_clock::now();
    TowerSpec t4 = build_tower(parse_groups("2,2,2,2"));
    TowerReport r4 = verify_tower(t4);
    bool escalation = r4.steps.size() == 4;
    for (const auto& s : r4.steps) escalation = escalation && s.escalation;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(r4.ok() && escalation, "4-step build verifies with every escalation check");
    o.require(secs < kLimit6, "4-step build under the time limit");
    o.detail << " 4-step=" << std::setprecision(3) << secs << "s";
}

// v_p(disc) <= 2 deg^2, with v_p taken from the discriminant itself.
bool bound_holds(const AbelianField& f) {
    mpz_class d = abs(f.discriminant());
    const unsigned long cap = 2UL * f.degree() * f.degree();
    for (const auto& [p, e] : f.modulus_factors()) {
        (void)e;
        mpz_class rest;
        const unsigned long v = mpz_remove(rest.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        if (v > cap) return false;
    }
    return true;
}

void crit7(Outcome& o) {
    std::size_t fields = 0;
    auto check = [&](const AbelianField& f) {
        o.require(bound_holds(f), "bound at " + f.to_string());
        ++fields;
    };
    for (long n = 1; n <= 64; ++n) {
        for (const auto& h : subfield_lattice(cyclotomic_field(n))) check(h);
    }
    for (long d = -300; d <= 300; ++d) {
        const long r = d > 0 ? std::lround(std::sqrt(static_cast<double>(d))) : -1;
        if (d != 0 && r * r != d) check(quadratic_field(d));
    }
    for (const char* g : {"2,2,2,2", "3,3", "2x2,3", "4,2", "5"}) {
        TowerSpec t = build_tower(parse_groups(g));
        for (const auto& k : t.K) check(k);
        for (const auto& l : t.L) {
            check(l);
            for (const auto& h : intermediate_fields(t.L.front(), l)) check(h);
        }
    }
    o.detail << " fields=" << fields;
}

void crit8(Outcome& o) {
    PreperiodicSet sq = preperiodic_points(RationalMap::parse("x^2"), 2);
    std::vector<AlgebraicNumber> second;
    for (const auto& e : g_d2.elements) second.push_back(e.value);
    o.require(sq.points == second, "preperiodic_points(x^2, 2) is the enumerate(2, 0.1) set");

    PreperiodicSet cm = preperiodic_points(RationalMap::parse("x^2 - 1"), 1);
    std::set<std::string> pts;
    for (const auto& p : cm.points) pts.insert(p.to_string());
    o.require(pts == std::set<std::string>{"-1", "0", "1"}, "preperiodic_points(x^2 - 1, 1) = {-1, 0, 1}");
    o.require(cm.cycles.size() == 1 && cm.cycles[0].size() == 2 && cm.cycles[0][0].to_string() == "0" &&
                  cm.cycles[0][1].to_string() == "-1",
              "single cycle (0, -1)");
    for (const char* m : {"x^2 - 1", "(x^2 + 1)/x"}) {
        RationalMap f = RationalMap::parse(m);
        HeightBounds b = height_constants(f);
        SampleValidation v = validate_height_constants(f, b, kSamples, kSeed);
        o.require(v.samples == kSamples, std::string("sample count for ") + m);
        o.require(v.lower_failures == 0 && v.upper_failures == 0, std::string("height constants for ") + m);
        o.require(v.threshold_checked > 0 && v.threshold_failures == 0, std::string("3/2 expansion for ") + m);
        o.detail << " " << m << ": above-threshold=" << v.threshold_checked << " poles=" << v.poles;
    }
}

void crit9(Outcome& o) {
    const std::vector<std::vector<std::string>> commands{
        {"height", "x^2 - x - 1", "--root-index", "1"},
        {"height", "2"},
        {"height", "x^4 - x^2 + 1"},
        {"enumerate", "--degree", "1", "--height", "0.7"},
        {"--format", "csv", "enumerate", "--degree", "2", "--height", "0.1"},
        {"enumerate", "--degree", "3", "--height", "0.05"},
        {"bogomolov", "--degree", "2", "--height", "0.3"},
        {"field", "disc", "zeta(15)"},
        {"field", "lattice", "sqrt(3)*sqrt(-83)"},
        {"field", "reldisc", "--lower", "sqrt(3)", "--upper", "sqrt(3)*sqrt(-83)"},
        {"field", "local", "zeta(24)", "--prime", "2"},
        {"tower", "build", "--groups", "2,2", "--verify"},
        {"tower", "build", "--groups", "2,2,2,2", "--verify"},
        {"dyn", "preperiodic", "--map", "x^2", "--degree", "2"},
        {"dyn", "preperiodic", "--map", "x^2 - 1", "--degree", "1"},
        {"dyn", "constants", "--map", "x^2 - 1", "--validate", "10000"},
        {"dyn", "constants", "--map", "(x^2 + 1)/x", "--validate", "10000"},
        {"dyn", "check-p", "--map", "x^2", "--set", "0,1"},
        {"dyn", "classify-r", "--map", "(x^2 + 1)/x"},
    };
    for (const auto& c : commands) {
        std::string outs[2];
        int codes[2];
        const char* workers[2] = {"1", "8"};
        for (int i = 0; i < 2; ++i) {
            std::vector<std::string> args{"--workers", workers[i]};
            args.insert(args.end(), c.begin(), c.end());
            std::ostringstream out, err;
            codes[i] = cli::run(args, out, err);
            outs[i] = out.str();
        }
        std::string joined;
        for (const auto& a : c) joined += a + " ";
        o.require(codes[0] == 0 && codes[1] == 0, "exit 0: " + joined);
        o.require(!outs[0].empty() && outs[0] == outs[1], "byte-identical: " + joined);
    }
    o.detail << " commands=" << commands.size();
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        void (*body)(Outcome&);
        double limit;  // seconds, 0 for none
    };
    const Criterion criteria[] = {
        {1, "height oracle", crit1, kLimit1},
        {2, "Northcott counts", crit2, kLimit2},
        {3, "Kronecker suite", crit3, kLimit3},
        {4, "conductor-discriminant vs polynomial discriminant", crit4, 0},
        {5, "tower identity", crit5, 0},
        {6, "tower step quantities", crit6, kLimit6},
        {7, "prime-power bound", crit7, 0},
        {8, "dynamics", crit8, kLimit8},
        {9, "determinism at 1 and 8 workers", crit9, 0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit > 0) o.require(secs < c.limit, "runtime under " + std::to_string(static_cast<int>(c.limit)) + " s");
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << std::fixed << std::setprecision(2)
                  << secs << " s)" << std::defaultfloat << o.detail.str() << std::endl;
    }
    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
    return failed == 0 ? 0 : 1;
}
