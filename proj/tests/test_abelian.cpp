#include <algorithm>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "northcott/abelian.hpp"
#include "northcott/cyclotomic.hpp"
#include "northcott/errors.hpp"
#include "northcott/resultant.hpp"

using namespace northcott;

namespace {

mpz_class z(long v) { return mpz_class(v); }

// Fundamental discriminant of Q(sqrt d), d squarefree, straight from the
// mod 4 rule.
long fundamental(long d) {
    long r = ((d % 4) + 4) % 4;
    return r == 1 ? d : 4 * d;
}

unsigned long mult_order(unsigned long a, unsigned long n) {
    if (n == 1) return 1;
    unsigned long x = a % n, k = 1;
    while (x != 1) {
        x = x * a % n;
        ++k;
    }
    return k;
}

// Subgroups of (Z/n)^* by closure over actual residues.
std::size_t count_unit_subgroups(unsigned long n) {
    std::vector<unsigned long> units;
    for (unsigned long a = 1; a < n; ++a) {
        if (std::gcd(a, n) == 1) units.push_back(a);
    }
    if (n <= 2) return 1;
    auto join = [&](std::set<unsigned long> h, unsigned long g) {
        std::vector<unsigned long> frontier(h.begin(), h.end());
        while (!frontier.empty()) {
            unsigned long x = frontier.back();
            frontier.pop_back();
            unsigned long y = x * g % n;
            if (h.insert(y).second) frontier.push_back(y);
            for (unsigned long w : std::vector<unsigned long>(h.begin(), h.end())) {
                unsigned long v = w * y % n;
                if (h.insert(v).second) frontier.push_back(v);
            }
        }
        return h;
    };
    std::set<std::set<unsigned long>> seen{{1}};
    std::vector<std::set<unsigned long>> queue{{1}};
    while (!queue.empty()) {
        auto h = queue.back();
        queue.pop_back();
        for (unsigned long g : units) {
            if (h.count(g)) continue;
            auto bigger = join(h, g);
            if (seen.insert(bigger).second) queue.push_back(bigger);
        }
    }
    return seen.size();
}

mpz_class ipow(const mpz_class& b, std::size_t e) {
    mpz_class r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

void expect_prime_power_bound(const AbelianField& f) {
    const mpz_class bound = z(2) * f.degree() * f.degree();
    for (const auto& [p, e] : f.discriminant_factors()) EXPECT_LE(mpz_class(e), bound) << f.to_string();
}

AbelianField biquadratic(long a, long b) { return compositum(quadratic_field(z(a)), quadratic_field(z(b))); }

}  // namespace

TEST(NumberTheory, Basics) {
    EXPECT_TRUE(is_prime(z(83)));
    EXPECT_FALSE(is_prime(z(91)));
    EXPECT_FALSE(is_prime(z(1)));
    PrimePowers f = factorize(z(-360));
    PrimePowers expected{{z(2), 3}, {z(3), 2}, {z(5), 1}};
    EXPECT_EQ(f, expected);
    mpz_class big = mpz_class("1000000007") * mpz_class("998244353");
    PrimePowers g = factorize(big);
    ASSERT_EQ(g.size(), 2U);
    EXPECT_EQ(g[0].first, mpz_class("998244353"));
    EXPECT_EQ(valuation(z(96), z(2)), 5U);
    EXPECT_EQ(next_prime_one_mod(z(81), z(2)), 83);
    EXPECT_EQ(next_prime_one_mod(z(1), z(3)), 7);
    EXPECT_EQ(next_prime_one_mod(z(7), z(3)), 13);
    EXPECT_EQ(primitive_root_prime_power(z(7)), 3);
    // 14 is a primitive root mod 29 but 14^28 = 1 mod 29^2; 2 works for both.
    EXPECT_EQ(primitive_root_prime_power(z(29)), 2);
    EXPECT_THROW(factorize(z(0)), DomainError);
}

TEST(NumberTheory, DiscreteLogFuzz) {
    const mpz_class m = 49;
    const mpz_class g = primitive_root_prime_power(z(7));
    PrimePowers of{{z(2), 1}, {z(3), 1}, {z(7), 1}};
    for (long x = 0; x < 42; ++x) {
        mpz_class h;
        mpz_class e = x;
        mpz_powm(h.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
        EXPECT_EQ(discrete_log(g, h, m, z(42), of), x);
    }
    EXPECT_THROW(discrete_log(z(2), z(3), z(7), z(3), {{z(3), 1}}), DomainError);  // 2 has order 3 mod 7
}

TEST(Abelian, QuadraticExamples) {
    AbelianField a = quadratic_field(z(-83));
    EXPECT_EQ(a.degree(), 2U);
    EXPECT_EQ(a.discriminant(), 83);
    AbelianField b = quadratic_field(z(3));
    EXPECT_EQ(b.degree(), 2U);
    EXPECT_EQ(b.discriminant(), 12);
    EXPECT_THROW(quadratic_field(z(1)), DomainError);
    EXPECT_THROW(quadratic_field(z(49)), DomainError);
    EXPECT_THROW(quadratic_field(z(0)), DomainError);
    EXPECT_EQ(quadratic_field(z(12)), b);   // discriminant form accepted
    EXPECT_EQ(quadratic_field(z(-332)), a); // -83 * 4
}

TEST(Abelian, QuadraticDiscriminantsMatchRule) {
    for (long d = -60; d <= 60; ++d) {
        if (d == 0 || d == 1) continue;
        bool squarefree = true;
        for (long p = 2; p * p <= std::labs(d); ++p) {
            if (d % (p * p) == 0) squarefree = false;
        }
        if (!squarefree) continue;
        AbelianField f = quadratic_field(z(d));
        const long disc = fundamental(d);
        EXPECT_EQ(f.discriminant(), std::labs(disc)) << d;
        EXPECT_EQ(f.modulus(), std::labs(disc)) << d;
        // Distinct squarefree d give distinct fields.
        for (long e = d + 1; e <= d + 3; ++e) {
            if (e == 0 || e == 1) continue;
            bool sf = true;
            for (long p = 2; p * p <= std::labs(e); ++p) {
                if (e % (p * p) == 0) sf = false;
            }
            if (sf) EXPECT_NE(f, quadratic_field(z(e))) << d << " " << e;
        }
    }
}

TEST(Abelian, CyclicSubfields) {
    AbelianField c = cyclic_subfield_of_cyclotomic(z(7), z(3));
    EXPECT_EQ(c.degree(), 3U);
    EXPECT_EQ(c.discriminant(), 49);
    // Polynomial cross-check: x^3 + x^2 - 2x - 1 generates it.
    EXPECT_EQ(c.discriminant(), abs(discriminant(IntPoly({-1, -2, 1, 1}))));
    EXPECT_EQ(cyclic_subfield_of_cyclotomic(z(83), z(2)), quadratic_field(z(-83)));
    AbelianField q5 = cyclic_subfield_of_cyclotomic(z(5), z(4));
    EXPECT_EQ(q5.discriminant(), 125);
    EXPECT_EQ(q5, cyclotomic_field(z(5)));
    EXPECT_THROW(cyclic_subfield_of_cyclotomic(z(7), z(4)), DomainError);
    EXPECT_THROW(cyclic_subfield_of_cyclotomic(z(9), z(2)), DomainError);
    EXPECT_THROW(cyclic_subfield_of_cyclotomic(z(7), z(1)), DomainError);
}

TEST(Abelian, Discriminants) {
    AbelianField f = biquadratic(2, 3);
    EXPECT_EQ(f.degree(), 4U);
    EXPECT_EQ(f.discriminant(), 2304);
    std::multiset<mpz_class> conductors;
    for (const auto& chi : f.characters()) conductors.insert(f.conductor_of(chi));
    EXPECT_EQ(conductors, (std::multiset<mpz_class>{1, 8, 12, 24}));
    EXPECT_EQ(AbelianField().discriminant(), 1);
    EXPECT_TRUE(AbelianField().is_rational());
    for (unsigned long n : {5UL, 8UL, 12UL, 15UL, 7UL, 9UL, 16UL, 20UL, 21UL}) {
        AbelianField c = cyclotomic_field(z(static_cast<long>(n)));
        EXPECT_EQ(c.degree(), euler_phi(n)) << n;
        EXPECT_EQ(c.discriminant(), abs(discriminant(cyclotomic(n)))) << n;
    }
    EXPECT_EQ(cyclotomic_field(z(6)), quadratic_field(z(-3)));
    EXPECT_TRUE(cyclotomic_field(z(2)).is_rational());
}

TEST(Abelian, LatticeCompositumIntersection) {
    AbelianField f = biquadratic(2, 3);
    auto lattice = subfield_lattice(f);
    ASSERT_EQ(lattice.size(), 5U);
    EXPECT_TRUE(lattice.front().is_rational());
    EXPECT_EQ(lattice.back(), f);
    std::set<mpz_class> quad;
    for (std::size_t i = 1; i < 4; ++i) quad.insert(lattice[i].discriminant());
    EXPECT_EQ(quad, (std::set<mpz_class>{8, 12, 24}));
    EXPECT_TRUE(intersection(quadratic_field(z(-3)), quadratic_field(z(-83))).is_rational());
    EXPECT_EQ(intersection(f, quadratic_field(z(6))), quadratic_field(z(6)));
    EXPECT_EQ(intersection(cyclotomic_field(z(12)), cyclotomic_field(z(15))), quadratic_field(z(-3)));
    EXPECT_EQ(compositum(quadratic_field(z(-1)), quadratic_field(z(2))), cyclotomic_field(z(8)));
    EXPECT_EQ(compositum(cyclotomic_field(z(4)), cyclotomic_field(z(3))), cyclotomic_field(z(12)));
}

TEST(Abelian, LatticeSizeMatchesUnitSubgroups) {
    for (unsigned long n : {5UL, 7UL, 8UL, 9UL, 12UL, 15UL, 16UL, 20UL, 21UL, 24UL}) {
        auto lattice = subfield_lattice(cyclotomic_field(z(static_cast<long>(n))));
        EXPECT_EQ(lattice.size(), count_unit_subgroups(n)) << n;
        for (const auto& h : lattice) {
            expect_prime_power_bound(h);
            EXPECT_EQ(euler_phi(n) % h.degree(), 0U);
            if (!h.is_rational()) EXPECT_GT(h.discriminant(), 1);
        }
    }
}

TEST(Abelian, RelativeDiscriminantNorm) {
    AbelianField l = quadratic_field(z(3));
    AbelianField m = compositum(l, quadratic_field(z(-83)));
    EXPECT_EQ(m.discriminant(), 992016);
    EXPECT_EQ(relative_discriminant_norm(l, m), 6889);
    EXPECT_EQ(relative_discriminant_norm(AbelianField(), l), 12);
    EXPECT_EQ(relative_discriminant_norm(m, m), 1);
    EXPECT_THROW(relative_discriminant_norm(quadratic_field(z(5)), m), DomainError);
    EXPECT_THROW(intermediate_fields(quadratic_field(z(5)), m), DomainError);
}

TEST(Abelian, TowerConsistencyOverEveryChain) {
    std::vector<AbelianField> tops{cyclotomic_field(z(15)), cyclotomic_field(z(24)), cyclotomic_field(z(16)),
                                   compositum(quadratic_field(z(3)), quadratic_field(z(-83)))};
    for (const auto& top : tops) {
        auto lattice = subfield_lattice(top);
        for (const auto& l : lattice) {
            for (const auto& m : lattice) {
                if (!m.contains(l)) continue;
                const std::size_t rel = m.degree() / l.degree();
                EXPECT_EQ(m.discriminant(), relative_discriminant_norm(l, m) * ipow(l.discriminant(), rel));
                EXPECT_EQ(intermediate_fields(l, m).size() >= 1, true);
            }
        }
    }
}

TEST(Abelian, LocalDegreeExamples) {
    EXPECT_EQ(cyclotomic_field(z(8)).local_degree(z(2)), 4);
    EXPECT_EQ(quadratic_field(z(3)).local_degree(z(5)), 2);
    EXPECT_EQ(cyclotomic_field(z(5)).local_degree(z(2)), 4);
    EXPECT_EQ(quadratic_field(z(3)).local_degree(z(11)), 1);  // 3 = 5^2 mod 11
    EXPECT_EQ(*quadratic_field(z(3)).max_ramified_prime(), 3);
    EXPECT_FALSE(AbelianField().max_ramified_prime().has_value());
    EXPECT_EQ(AbelianField().local_degree(z(7)), 1);
    EXPECT_THROW(quadratic_field(z(3)).local_degree(z(9)), DomainError);
}

TEST(Abelian, CyclotomicLocalDegreeOracle) {
    // For Q(zeta_n) with n = p^v n', e = phi(p^v) and f = ord_{n'}(p).
    for (unsigned long n : {5UL, 7UL, 8UL, 9UL, 12UL, 15UL, 16UL, 20UL, 21UL, 24UL, 35UL}) {
        AbelianField c = cyclotomic_field(z(static_cast<long>(n)));
        for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 29UL, 31UL}) {
            unsigned long np = n, pv = 1;
            while (np % p == 0) {
                np /= p;
                pv *= p;
            }
            const unsigned long expected = euler_phi(pv) * mult_order(p, np);
            EXPECT_EQ(c.local_degree(z(static_cast<long>(p))), expected) << n << " " << p;
            auto [e, f] = c.local_ef(z(static_cast<long>(p)));
            EXPECT_EQ(e, euler_phi(pv)) << n << " " << p;
            EXPECT_EQ(f, mult_order(p, np)) << n << " " << p;
        }
    }
}

TEST(Abelian, QuadraticLocalDegreeOracle) {
    // Q(sqrt d) at an odd prime p not dividing d: split iff d is a square mod p.
    for (long d : {-83L, -7L, -3L, -1L, 2L, 3L, 5L, 6L, 13L}) {
        AbelianField f = quadratic_field(z(d));
        for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 83L}) {
            long expected;
            if (d % p == 0) {
                expected = 2;
            } else {
                bool square = false;
                for (long x = 1; x < p; ++x) {
                    if (((x * x - d) % p + p) % p == 0) square = true;
                }
                expected = square ? 1 : 2;
            }
            EXPECT_EQ(f.local_degree(z(p)), expected) << d << " " << p;
        }
    }
}

TEST(Abelian, LocalDegreeInvariants) {
    for (unsigned long n : {15UL, 21UL, 24UL, 16UL}) {
        for (const auto& h : subfield_lattice(cyclotomic_field(z(static_cast<long>(n))))) {
            const mpz_class disc = h.discriminant();
            for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
                const mpz_class ld = h.local_degree(z(p));
                EXPECT_TRUE(mpz_divisible_p(mpz_class(h.degree()).get_mpz_t(), ld.get_mpz_t()));
                // e > 1 exactly when p ramifies.
                std::size_t unramified = 0;
                for (const auto& chi : h.characters()) {
                    if (!mpz_divisible_p(h.conductor_of(chi).get_mpz_t(), z(p).get_mpz_t())) ++unramified;
                }
                const bool ramified = unramified < h.degree();
                EXPECT_EQ(ramified, mpz_divisible_p(disc.get_mpz_t(), z(p).get_mpz_t())) << h.to_string() << " " << p;
            }
        }
    }
}

TEST(Abelian, LinearDisjointness) {
    AbelianField a = quadratic_field(z(-3));
    AbelianField b = quadratic_field(z(-83));
    EXPECT_TRUE(intersection(a, b).is_rational());
    EXPECT_EQ(compositum(a, b).degree(), a.degree() * b.degree());
    AbelianField c = cyclotomic_field(z(12));
    EXPECT_FALSE(intersection(a, c).is_rational());
    EXPECT_LT(compositum(a, c).degree(), a.degree() * c.degree());
}

TEST(Abelian, GeneratorsRoundTrip) {
    for (const auto& h : subfield_lattice(cyclotomic_field(z(24)))) {
        AbelianField back = AbelianField::from_generators(h.modulus_factors(), h.generators());
        EXPECT_EQ(back, h);
    }
    EXPECT_THROW(AbelianField::from_generators({{z(7), 1}}, {Character{1, 2}}), DomainError);
}

TEST(Abelian, ParseField) {
    EXPECT_EQ(parse_field("Q"), AbelianField());
    EXPECT_EQ(parse_field("sqrt(3)*sqrt(-83)"), compositum(quadratic_field(z(3)), quadratic_field(z(-83))));
    EXPECT_EQ(parse_field(" zeta( 15 ) "), cyclotomic_field(z(15)));
    EXPECT_EQ(parse_field("cyclic(7,3)"), cyclic_subfield_of_cyclotomic(z(7), z(3)));
    EXPECT_EQ(parse_field("sqrt(12)"), quadratic_field(z(3)));
    EXPECT_EQ(parse_field("sqrt(2)*Q"), quadratic_field(z(2)));
    for (const char* bad : {"", "sqrt(", "sqrt(x)", "zeta(0)", "cyclic(7)", "sqrt(2)**zeta(3)", "Q(i)"}) {
        EXPECT_THROW(parse_field(bad), std::exception) << bad;
    }
    try {
        parse_field("sqrt(2)*foo");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 8U);
    }
}
