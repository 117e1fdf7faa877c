#include <cmath>
#include <complex>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "northcott/cyclotomic.hpp"
#include "northcott/errors.hpp"
#include "northcott/northcott.hpp"
#include "northcott/poly_parse.hpp"

using namespace northcott;

namespace {

mpq_class q(long n, long d) {
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

std::set<std::pair<std::string, std::size_t>> keys(const NorthcottSet& s) {
    std::set<std::pair<std::string, std::size_t>> out;
    for (const auto& e : s.elements) out.emplace(e.value.minpoly().to_string(), e.value.root_index());
    return out;
}

std::set<std::string> minpolys(const NorthcottSet& s) {
    std::set<std::string> out;
    for (const auto& e : s.elements) out.insert(e.value.minpoly().to_string());
    return out;
}

// Brute force over reduced fractions p/q with max(|p|, q) < e^T.
std::set<std::string> degree_one_oracle(double T) {
    std::set<std::string> out;
    const long h = static_cast<long>(std::ceil(std::exp(T)));
    for (long qq = 1; qq <= h; ++qq) {
        for (long p = -h; p <= h; ++p) {
            if (std::gcd(p, qq) != 1) continue;
            if (static_cast<double>(std::max(std::labs(p), qq)) >= std::exp(T)) continue;
            out.insert(IntPoly({-p, qq}).to_string());
        }
    }
    return out;
}

// Quadratic oracle: scan a generous box, decide irreducibility by the
// discriminant, measure with the quadratic formula in long double.
std::set<std::string> quadratic_oracle(double T, long box) {
    std::set<std::string> out;
    for (long a = 1; a <= box; ++a) {
        for (long b = -box; b <= box; ++b) {
            for (long c = -box; c <= box; ++c) {
                if (c == 0 || std::gcd(std::gcd(a, std::labs(b)), std::labs(c)) != 1) continue;
                long disc = b * b - 4 * a * c;
                if (disc >= 0) {
                    long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
                    if (s * s == disc) continue;
                }
                std::complex<long double> sq = std::sqrt(std::complex<long double>(static_cast<long double>(disc), 0));
                long double m = a;
                for (int sign : {-1, 1}) {
                    auto r = (static_cast<long double>(-b) + static_cast<long double>(sign) * sq) / (2.0L * a);
                    m *= std::max<long double>(1, std::abs(r));
                }
                if (std::log(m) / 2 < T) out.insert(IntPoly({c, b, a}).to_string());
            }
        }
    }
    return out;
}

}  // namespace

TEST(Enumerate, DegreeOneSeven) {
    NorthcottSet s = enumerate(1, q(7, 10));
    ASSERT_EQ(s.elements.size(), 7U);
    std::set<mpq_class> values;
    for (const auto& e : s.elements) values.insert(e.value.rational_value());
    std::set<mpq_class> expected{0, 1, -1, 2, -2, q(1, 2), q(-1, 2)};
    EXPECT_EQ(values, expected);
    EXPECT_EQ(minpolys(s), degree_one_oracle(0.7));
}

TEST(Enumerate, DegreeTwoTenth) {
    NorthcottSet s = enumerate(2, q(1, 10));
    ASSERT_EQ(s.elements.size(), 9U);
    std::set<std::string> expected{"x"};
    for (unsigned long n : {1, 2, 3, 4, 6}) expected.insert(cyclotomic(n).to_string());
    EXPECT_EQ(minpolys(s), expected);
    std::set<std::string> oracle = quadratic_oracle(0.1, 4);
    for (const auto& f : degree_one_oracle(0.1)) oracle.insert(f);
    EXPECT_EQ(minpolys(s), oracle);
}

TEST(Enumerate, ZeroHeightIsEmpty) {
    EXPECT_TRUE(enumerate(3, 0).elements.empty());
    EXPECT_THROW(enumerate(0, q(1, 2)), DomainError);
    EXPECT_THROW(enumerate(2, q(-1, 2)), DomainError);
}

TEST(Enumerate, DegreeOneOracleManyT) {
    for (auto [n, d] : {std::pair{1L, 20L}, {1L, 2L}, {6L, 5L}, {5L, 2L}, {16L, 5L}}) {
        NorthcottSet s = enumerate(1, q(n, d));
        EXPECT_EQ(minpolys(s), degree_one_oracle(static_cast<double>(n) / static_cast<double>(d))) << n << "/" << d;
    }
}

TEST(Enumerate, QuadraticOracle) {
    for (auto [n, d] : {std::pair{1L, 4L}, {3L, 10L}, {1L, 2L}}) {
        const double T = static_cast<double>(n) / static_cast<double>(d);
        NorthcottSet s = enumerate(2, q(n, d));
        std::set<std::string> oracle = quadratic_oracle(T, static_cast<long>(std::exp(2 * T) * 2) + 2);
        for (const auto& f : degree_one_oracle(T)) oracle.insert(f);
        EXPECT_EQ(minpolys(s), oracle) << n << "/" << d;
    }
}

TEST(Enumerate, Monotone) {
    auto a = keys(enumerate(1, q(1, 2)));
    auto b = keys(enumerate(2, q(1, 2)));
    auto c = keys(enumerate(2, q(3, 5)));
    auto e = keys(enumerate(3, q(3, 5)));
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    EXPECT_TRUE(std::includes(c.begin(), c.end(), b.begin(), b.end()));
    EXPECT_TRUE(std::includes(e.begin(), e.end(), c.begin(), c.end()));
}

TEST(Enumerate, GaloisStableAndInversionClosed) {
    NorthcottSet s = enumerate(3, q(3, 10));
    auto k = keys(s);
    for (const auto& e : s.elements) {
        const IntPoly& f = e.value.minpoly();
        for (int i = 0; i < f.degree(); ++i) EXPECT_TRUE(k.count({f.to_string(), static_cast<std::size_t>(i)})) << f;
        if (f == IntPoly::x()) continue;
        AlgebraicNumber inv = e.value.inverse();
        EXPECT_TRUE(k.count({inv.minpoly().to_string(), inv.root_index()})) << e.value.to_string();
    }
}

TEST(Enumerate, HeightsBelowBoundAndOrdered) {
    mpq_class T = q(2, 5);
    NorthcottSet s = enumerate(3, T);
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
        const auto& e = s.elements[i];
        EXPECT_LT(e.height.lo, T);
        EXPECT_TRUE(height_below(e.value, T));
        EXPECT_LE(e.height.width(), default_height_tol());
        if (i > 0) EXPECT_TRUE(s.elements[i - 1].value < e.value);
    }
}

TEST(Enumerate, Kronecker) {
    NorthcottSet s = enumerate(3, q(1, 20));
    ASSERT_FALSE(s.elements.empty());
    for (const auto& e : s.elements) {
        const IntPoly& f = e.value.minpoly();
        const bool torsion = f == IntPoly::x() || root_of_unity_order(f).has_value();
        EXPECT_EQ(torsion, e.height.hi == 0) << f;
        EXPECT_EQ(!torsion, e.height.lo > 0) << f;
    }
}

TEST(Enumerate, DeterministicAcrossWorkers) {
    EnumerateOptions one;
    one.workers = 1;
    EnumerateOptions eight;
    eight.workers = 8;
    NorthcottSet a = enumerate(3, q(2, 5), one);
    NorthcottSet b = enumerate(3, q(2, 5), eight);
    ASSERT_EQ(a.elements.size(), b.elements.size());
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        EXPECT_EQ(a.elements[i].value, b.elements[i].value);
        EXPECT_EQ(a.elements[i].height.lo, b.elements[i].height.lo);
        EXPECT_EQ(a.elements[i].height.hi, b.elements[i].height.hi);
    }
}

TEST(Enumerate, Budget) {
    EnumerateOptions tight;
    tight.budget = 1000;
    EXPECT_THROW(enumerate(4, 1, tight), BudgetExceeded);
    EXPECT_GT(enumeration_cells(4, 1), 1000);
    EXPECT_EQ(enumeration_cells(1, q(7, 10)), 10);  // lc in {1,2}, |a_0| <= 2
}

TEST(Bogomolov, Examples) {
    BogomolovReport r = bogomolov_scan(2, q(1, 5));
    EXPECT_TRUE(r.nontorsion.empty());
    EXPECT_FALSE(r.min_nontorsion_height.has_value());

    BogomolovReport r2 = bogomolov_scan(2, q(1, 4));
    ASSERT_TRUE(r2.min_nontorsion_height.has_value());
    const double oracle = 0.5 * std::log((1 + std::sqrt(5.0)) / 2);
    EXPECT_NEAR(r2.min_nontorsion_height->midpoint(), oracle, 1e-9);
    EXPECT_EQ(r2.min_attained_by.size(), 2U);  // x^2 + x - 1 and x^2 - x - 1
    EXPECT_EQ(r2.min_attained_by.front(), parse_polynomial("x^2 - x - 1"));
    EXPECT_EQ(r2.min_attained_by.back(), parse_polynomial("x^2 + x - 1"));
    EXPECT_EQ(r2.torsion_count, 8U);
    EXPECT_TRUE(r2.zero_present);

    BogomolovReport r3 = bogomolov_scan(1, q(1, 2));
    EXPECT_TRUE(r3.nontorsion.empty());
    EXPECT_EQ(r3.torsion_count, 2U);
    EXPECT_TRUE(r3.zero_present);
}
