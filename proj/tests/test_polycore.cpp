#include <gtest/gtest.h>

#include <random>

#include "northcott/cyclotomic.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/int_poly.hpp"
#include "northcott/poly_parse.hpp"
#include "northcott/resultant.hpp"

using namespace northcott;

namespace {

// Determinant of the Sylvester matrix by Bareiss elimination; independent
// of the subresultant chain used by resultant().
mpz_class sylvester_resultant(const IntPoly& f, const IntPoly& g) {
    const int m = f.degree(), n = g.degree();
    const int size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<mpz_class>> a(size, std::vector<mpz_class>(size));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) a[r][r + j] = f[static_cast<std::size_t>(m - j)];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) a[n + r][r + j] = g[static_cast<std::size_t>(n - j)];
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (a[k][k] == 0) {
            int swap = -1;
            for (int r = k + 1; r < size; ++r)
                if (a[r][k] != 0) swap = r;
            if (swap < 0) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

IntPoly random_poly(std::mt19937_64& rng, int degree, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<mpz_class> c(static_cast<std::size_t>(degree + 1));
    for (auto& v : c) v = d(rng);
    if (c.back() == 0) c.back() = 1;
    return IntPoly(std::move(c));
}

}  // namespace

TEST(Resultant, LinearFactors) { EXPECT_EQ(resultant(IntPoly{-2, 1}, IntPoly{-3, 1}), -1); }

TEST(Resultant, RootEvaluationOracle) {
    // Roots of x^2+1 are +-i; (i^2-2)(-i^2... ) = (-3)(-3).
    EXPECT_EQ(resultant(IntPoly{1, 0, 1}, IntPoly{-2, 0, 1}), 9);
}

TEST(Resultant, ConstantOne) {
    EXPECT_EQ(resultant(IntPoly{5, 3, -7, 2}, IntPoly{1}), 1);
    EXPECT_EQ(resultant(IntPoly{1}, IntPoly{5, 3, -7, 2}), 1);
}

TEST(Resultant, ZeroIsDomainError) { EXPECT_THROW(resultant(IntPoly{}, IntPoly{1, 1}), DomainError); }

TEST(Resultant, MatchesSylvesterDeterminantAndSwapRule) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> dd(1, 7);
        IntPoly f = random_poly(rng, dd(rng), 9);
        IntPoly g = random_poly(rng, dd(rng), 9);
        if (trial % 5 == 0) {
            // Force a common factor every now and then.
            IntPoly h = random_poly(rng, 1, 4);
            f *= h;
            g *= h;
        }
        mpz_class r = resultant(f, g);
        EXPECT_EQ(r, sylvester_resultant(f, g)) << f << " | " << g;
        const int s = (f.degree() * g.degree()) % 2 ? -1 : 1;
        EXPECT_EQ(r, s * resultant(g, f));
    }
}

TEST(Discriminant, QuadraticOracle) {
    EXPECT_EQ(discriminant(IntPoly{-1, -1, 1}), 5);
    EXPECT_EQ(discriminant(IntPoly{-2, 0, 1}), 8);
    EXPECT_EQ(discriminant(IntPoly{-7, 1}), 1);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        IntPoly f = random_poly(rng, 2, 50);
        EXPECT_EQ(discriminant(f), f[1] * f[1] - 4 * f[0] * f[2]);
    }
}

TEST(Discriminant, ConstantIsDomainError) { EXPECT_THROW(discriminant(IntPoly{3}), DomainError); }

TEST(Discriminant, VanishesExactlyOnRepeatedFactors) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        IntPoly f = random_poly(rng, 3, 6);
        IntPoly h = random_poly(rng, 1, 5);
        EXPECT_EQ(discriminant(f * h * h), 0);
        if (squarefree_part(f).degree() == f.degree()) {
            EXPECT_NE(discriminant(f), 0);
        }
    }
}

TEST(Factor, SpecExamples) {
    Factorization a = factor(IntPoly{-1, 0, 0, 0, 1});
    ASSERT_EQ(a.factors.size(), 3u);
    EXPECT_EQ(a.content, 1);
    EXPECT_EQ(a.factors[0], (Factor{IntPoly{-1, 1}, 1}));
    EXPECT_EQ(a.factors[1], (Factor{IntPoly{1, 1}, 1}));
    EXPECT_EQ(a.factors[2], (Factor{IntPoly{1, 0, 1}, 1}));

    Factorization b = factor(IntPoly{0, 6});
    EXPECT_EQ(b.content, 6);
    ASSERT_EQ(b.factors.size(), 1u);
    EXPECT_EQ(b.factors[0], (Factor{IntPoly{0, 1}, 1}));

    // Sophie Germain: x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
    Factorization c = factor(IntPoly{4, 0, 0, 0, 1});
    ASSERT_EQ(c.factors.size(), 2u);
    EXPECT_EQ(c.factors[0].poly, (IntPoly{2, -2, 1}));
    EXPECT_EQ(c.factors[1].poly, (IntPoly{2, 2, 1}));
}

TEST(Factor, NegativeContentAndMultiplicity) {
    IntPoly f = IntPoly{-3} * IntPoly{1, 1} * IntPoly{1, 1} * IntPoly{-2, 0, 1};
    Factorization r = factor(f);
    EXPECT_EQ(r.content, -3);
    ASSERT_EQ(r.factors.size(), 2u);
    EXPECT_EQ(r.factors[0], (Factor{IntPoly{1, 1}, 2}));
    EXPECT_EQ(r.factors[1], (Factor{IntPoly{-2, 0, 1}, 1}));
    EXPECT_EQ(r.expand(), f);
}

TEST(Factor, SwinnertonDyerNeedsRecombination) {
    // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
    IntPoly sd{1, 0, -10, 0, 1};
    EXPECT_TRUE(is_irreducible(sd));
    IntPoly prod = sd * IntPoly{1, 0, -10, 0, 1}.negated_argument() * IntPoly{-5, 0, 1};
    Factorization r = factor(prod);
    ASSERT_EQ(r.factors.size(), 2u);
    EXPECT_EQ(r.factors[0].poly, (IntPoly{-5, 0, 1}));
    EXPECT_EQ(r.factors[1], (Factor{sd, 2}));
}

TEST(Factor, DegreeSixteen) {
    EXPECT_TRUE(is_irreducible(cyclotomic(17)));
    IntPoly x16m1 = IntPoly::monomial(1, 16) - IntPoly{1};
    Factorization r = factor(x16m1);
    std::vector<IntPoly> expect{cyclotomic(1), cyclotomic(2), cyclotomic(4), cyclotomic(8), cyclotomic(16)};
    ASSERT_EQ(r.factors.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(r.factors[i].poly, expect[i]);

    IntPoly a = cyclotomic(15) + IntPoly{0, 3};  // degree 8
    IntPoly b = cyclotomic(20) - IntPoly{2};     // degree 8
    Factorization ab = factor(a * b);
    EXPECT_EQ(ab.expand(), a * b);
    for (const auto& f : ab.factors) EXPECT_LE(f.poly.degree(), 8);
}

TEST(Factor, RoundTripFuzz) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> nf(1, 4), dd(1, 4);
        IntPoly f = IntPoly::constant(std::uniform_int_distribution<long>(1, 12)(rng));
        for (int k = nf(rng); k > 0; --k) f *= random_poly(rng, dd(rng), 6);
        if (f.is_zero()) continue;
        Factorization r = factor(f);
        EXPECT_EQ(r.expand(), f) << f;
        for (std::size_t i = 0; i < r.factors.size(); ++i) {
            EXPECT_TRUE(r.factors[i].poly.is_canonical());
            if (i > 0) EXPECT_TRUE(CanonicalLess{}(r.factors[i - 1].poly, r.factors[i].poly));
        }
    }
}

TEST(Factor, ZeroIsDomainError) { EXPECT_THROW(factor(IntPoly{}), DomainError); }

TEST(Cyclotomic, Phi12) { EXPECT_EQ(cyclotomic(12), (IntPoly{1, 0, -1, 0, 1})); }

TEST(Cyclotomic, OrderRecognition) {
    EXPECT_EQ(root_of_unity_order(IntPoly{1, 1, 1}), 3u);
    EXPECT_EQ(root_of_unity_order(IntPoly{-1, -1, 1}), std::nullopt);
    EXPECT_EQ(root_of_unity_order(IntPoly{0, 1}), std::nullopt);
    EXPECT_THROW(root_of_unity_order(IntPoly{-1, 0, 1}), DomainError);
    for (unsigned long n = 1; n <= 100; ++n) {
        EXPECT_EQ(root_of_unity_order(cyclotomic(n)), n);
        EXPECT_EQ(static_cast<unsigned long>(cyclotomic(n).degree()), euler_phi(n));
    }
}

TEST(Parse, Polynomials) {
    EXPECT_EQ(parse_polynomial("x^2 - x - 1"), (IntPoly{-1, -1, 1}));
    EXPECT_EQ(parse_polynomial("2x^3+(x+1)^2"), (IntPoly{1, 2, 1, 2}));
    EXPECT_EQ(parse_polynomial("-x*x + 4"), (IntPoly{4, 0, -1}));
    EXPECT_EQ(parse_polynomial("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"),
              (IntPoly{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}));
}

TEST(Parse, RejectsNonIntegerWithPosition) {
    try {
        parse_polynomial("x^2 + 0.5");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 7u);
    }
    EXPECT_THROW(parse_polynomial("x^2 + y"), ParseError);
    EXPECT_THROW(parse_polynomial("x/2"), ParseError);
    EXPECT_THROW(parse_polynomial("(x+1"), ParseError);
    EXPECT_THROW(parse_polynomial(""), ParseError);
}

TEST(Parse, RationalFunctionsReduce) {
    RationalFunction r = parse_rational_function("(x^2+1)/x");
    EXPECT_EQ(r.num, (IntPoly{1, 0, 1}));
    EXPECT_EQ(r.den, (IntPoly{0, 1}));
    RationalFunction s = parse_rational_function("(x^2-1)/(2x-2)");
    EXPECT_EQ(s.num, (IntPoly{1, 1}));
    EXPECT_EQ(s.den, (IntPoly{2}));
    RationalFunction t = parse_rational_function("(2x+1)/(-x+1)");
    EXPECT_EQ(t.num, (IntPoly{-1, -2}));
    EXPECT_EQ(t.den, (IntPoly{-1, 1}));
}

TEST(IntPoly, TextRoundTrip) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        IntPoly f = random_poly(rng, 6, 20);
        EXPECT_EQ(parse_polynomial(f.to_string()), f);
    }
}
