#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "northcott/errors.hpp"
#include "northcott/serialize.hpp"
#include "northcott/towers.hpp"

using namespace northcott;

namespace {

mpz_class z(long v) { return mpz_class(v); }

bool trial_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Smallest prime p > above with p = 1 mod n, by trial division.
unsigned long oracle_prime(unsigned long above, unsigned long n) {
    for (unsigned long p = above + 1;; ++p) {
        if (p % n == 1 && trial_prime(p)) return p;
    }
}

double as_double(const mpq_class& q) { return q.get_d(); }

void expect_escalation(const TowerSpec& t) {
    for (std::size_t i = 1; i <= t.steps(); ++i) {
        mpz_class bound;
        const unsigned long g = t.groups[i - 1].order();
        mpz_pow_ui(bound.get_mpz_t(), largest_ramified_prime(t.K[i - 1]).get_mpz_t(), g * g);
        for (const auto& h : subfield_lattice(t.K[i])) {
            if (h.is_rational()) continue;
            EXPECT_GT(largest_ramified_prime(h), bound) << "step " << i << " " << h.to_string();
        }
    }
}

void expect_step_divisibility(const TowerSpec& t) {
    for (std::size_t i = 1; i <= t.steps(); ++i) {
        for (const auto& m : intermediate_fields(t.L[i - 1], t.L[i])) {
            if (m == t.L[i - 1]) continue;
            AbelianField h = intersection(m, t.K[i]);
            ASSERT_FALSE(h.is_rational());
            mpz_class ph;
            mpz_pow_ui(ph.get_mpz_t(), largest_ramified_prime(h).get_mpz_t(), m.degree() / h.degree());
            const mpz_class n = relative_discriminant_norm(t.L[i - 1], m);
            EXPECT_TRUE(mpz_divisible_p(n.get_mpz_t(), ph.get_mpz_t())) << m.to_string();
        }
    }
}

}  // namespace

TEST(Groups, Parse) {
    EXPECT_EQ(parse_group("2").factors, (std::vector<unsigned long>{2}));
    EXPECT_EQ(parse_group("C2xC3").factors, (std::vector<unsigned long>{2, 3}));
    EXPECT_EQ(parse_group("2x2").order(), 4U);
    EXPECT_EQ(parse_group("2x3").exponent(), 6U);
    auto g = parse_groups("2,2x3,C4");
    ASSERT_EQ(g.size(), 3U);
    EXPECT_EQ(g[1].to_string(), "2x3");
    EXPECT_THROW(parse_group("S3"), Unsupported);
    EXPECT_THROW(parse_group("Q8"), Unsupported);
    EXPECT_THROW(parse_group("D4"), Unsupported);
    EXPECT_THROW(parse_group("1"), ParseError);
    EXPECT_THROW(parse_group("2y3"), ParseError);
    try {
        parse_groups("2,,2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 2U);
    }
}

TEST(TowerStep, Examples) {
    StepReport a = step_quantity(AbelianField(), quadratic_field(z(-3)));
    EXPECT_EQ(a.witness, quadratic_field(z(-3)));
    EXPECT_EQ(a.norm, 3);
    EXPECT_EQ(a.exponent, 4);
    EXPECT_NEAR(as_double(a.quantity.lo), std::pow(3.0, 0.25), 1e-12);
    EXPECT_LT(a.quantity.width(), mpq_class(1, 1000000000));

    AbelianField l = quadratic_field(z(3));
    AbelianField m = compositum(l, quadratic_field(z(-83)));
    StepReport b = step_quantity(l, m);
    EXPECT_EQ(b.norm, 6889);
    EXPECT_EQ(b.exponent, 8);
    EXPECT_EQ(b.witness, m);
    EXPECT_NEAR(as_double(b.quantity.lo), std::pow(83.0, 0.25), 1e-12);
    EXPECT_LE(b.quantity.lo, b.quantity.hi);
    EXPECT_EQ(b.p_prev, 3);

    EXPECT_THROW(step_quantity(l, l), DomainError);
    EXPECT_THROW(step_quantity(quadratic_field(z(5)), m), DomainError);
}

TEST(TowerStep, PicksTheMinimum) {
    // Q < Q(zeta_15): every nontrivial subfield is a candidate.
    AbelianField top = cyclotomic_field(z(15));
    StepReport r = step_quantity(AbelianField(), top);
    for (const auto& m : subfield_lattice(top)) {
        if (m.is_rational()) continue;
        const double q = std::pow(m.discriminant().get_d(), 1.0 / static_cast<double>(m.degree() * m.degree()));
        EXPECT_LE(as_double(r.quantity.lo), q + 1e-12) << m.to_string();
    }
    // 3^4 5^6 to the 1/64 beats 3^(1/4).
    EXPECT_EQ(r.witness, top);
}

TEST(Tower, TwoStepExample) {
    TowerSpec t = build_tower(parse_groups("2,2"));
    ASSERT_EQ(t.steps(), 2U);
    EXPECT_EQ(t.primes[0][0], oracle_prime(1, 2));
    EXPECT_EQ(t.primes[1][0], oracle_prime(81, 2));
    EXPECT_EQ(t.primes[0][0], 3);
    EXPECT_EQ(t.primes[1][0], 83);
    EXPECT_EQ(t.K[1], quadratic_field(z(-3)));
    EXPECT_EQ(t.K[2], quadratic_field(z(-83)));
    TowerReport r = verify_tower(t, 2);
    ASSERT_EQ(r.steps.size(), 2U);
    EXPECT_TRUE(r.ok());
    const mpq_class tol(1, 1000000000);
    EXPECT_TRUE(r.steps[0].quantity.width() < tol);
    EXPECT_NEAR(as_double(r.steps[0].quantity.lo), std::pow(3.0L, 0.25L), 1e-9);
    EXPECT_NEAR(as_double(r.steps[1].quantity.lo), std::pow(83.0L, 0.25L), 1e-9);
    EXPECT_GT(r.steps[1].quantity.lo, 3);
    EXPECT_GT(r.steps[1].quantity.lo, r.steps[0].quantity.hi);
    EXPECT_EQ(r.steps[1].p_prev, 3);
}

TEST(Tower, BadSecondPrimeFailsExceedsCheck) {
    TowerSpec t = tower_from_primes(parse_groups("2,2"), {{z(3)}, {z(5)}});
    TowerReport r = verify_tower(t);
    ASSERT_EQ(r.steps.size(), 2U);
    EXPECT_TRUE(r.steps[0].ok());
    EXPECT_TRUE(r.steps[1].disjoint);
    EXPECT_FALSE(r.steps[1].exceeds_prev);
    EXPECT_FALSE(r.steps[1].escalation);
    EXPECT_FALSE(r.ok());
    EXPECT_NEAR(as_double(r.steps[1].quantity.lo), std::pow(5.0, 0.25), 1e-9);
}

TEST(Tower, SingleStepAndCubic) {
    TowerSpec t = build_tower(parse_groups("3"));
    EXPECT_EQ(t.primes[0][0], oracle_prime(1, 3));
    EXPECT_EQ(t.K[1], cyclic_subfield_of_cyclotomic(z(7), z(3)));
    TowerReport r = verify_tower(t);
    ASSERT_EQ(r.steps.size(), 1U);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.steps[0].increasing);
}

TEST(Tower, ThirdPrime) {
    TowerSpec t = build_tower(parse_groups("2,2,2"));
    EXPECT_EQ(t.primes[2][0], oracle_prime(83UL * 83 * 83 * 83, 2));
    EXPECT_TRUE(verify_tower(t).ok());
}

TEST(Tower, FourStepsVerifyInTime) {
    auto start = std::chrono::steady_clock::now();
    TowerSpec t = build_tower(parse_groups("2,2,2,2"));
    TowerReport r = verify_tower(t);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ASSERT_EQ(r.steps.size(), 4U);
    EXPECT_TRUE(r.ok());
    EXPECT_LT(secs, 120.0);
    expect_escalation(t);
    CertificateCheck c = verify_certificate(tower_certificate(t, r));
    EXPECT_TRUE(c.ok()) << c.mismatch;
}

TEST(Tower, ProductGroupsAndInvariants) {
    for (const char* spec : {"2,2", "3", "2x2", "2x3", "2,3", "3,2", "4", "2x2,2", "2,2,2"}) {
        TowerSpec t = build_tower(parse_groups(spec));
        TowerReport r = verify_tower(t);
        EXPECT_TRUE(r.ok()) << spec;
        expect_escalation(t);
        expect_step_divisibility(t);
        for (std::size_t i = 1; i <= t.steps(); ++i) {
            EXPECT_EQ(t.K[i].degree(), t.groups[i - 1].order()) << spec;
            EXPECT_EQ(t.L[i].degree(), t.L[i - 1].degree() * t.K[i].degree()) << spec;
            EXPECT_TRUE(t.L[i].contains(t.L[i - 1]));
        }
    }
}

TEST(Tower, StartHint) {
    TowerSpec t = build_tower(parse_groups("2"), z(100));
    EXPECT_EQ(t.primes[0][0], 101);
    TowerSpec u = build_tower(parse_groups("2,2"), z(5));
    EXPECT_EQ(u.primes[0][0], 5);
    EXPECT_EQ(u.primes[1][0], oracle_prime(625, 2));
}

TEST(Tower, LinearDisjointnessBothWays) {
    // Trivial character intersection iff the field intersection is Q.
    std::vector<AbelianField> fields{quadratic_field(z(-3)), quadratic_field(z(5)), quadratic_field(z(-15)),
                                     cyclotomic_field(z(5)), cyclic_subfield_of_cyclotomic(z(7), z(3)),
                                     cyclotomic_field(z(12))};
    for (const auto& a : fields) {
        for (const auto& b : fields) {
            std::vector<Character> xa = a.characters_at(cyclotomic_field(z(420)).modulus_factors());
            std::vector<Character> xb = b.characters_at(cyclotomic_field(z(420)).modulus_factors());
            std::vector<Character> common;
            std::set_intersection(xa.begin(), xa.end(), xb.begin(), xb.end(), std::back_inserter(common));
            const bool trivial = common.size() == 1;
            EXPECT_EQ(trivial, intersection(a, b).is_rational());
            EXPECT_EQ(trivial, compositum(a, b).degree() == a.degree() * b.degree());
        }
    }
}

TEST(Tower, InputValidation) {
    EXPECT_THROW(tower_from_primes(parse_groups("2"), {{z(9)}}), DomainError);
    EXPECT_THROW(tower_from_primes(parse_groups("3"), {{z(11)}}), DomainError);
    EXPECT_THROW(tower_from_primes(parse_groups("2,2"), {{z(3)}, {z(3)}}), DomainError);
    EXPECT_THROW(tower_from_primes(parse_groups("2"), {{z(3)}, {z(5)}}), DomainError);
    EXPECT_THROW(build_tower({}), DomainError);
}

TEST(Certificate, RoundTrip) {
    TowerSpec t = build_tower(parse_groups("2,2"));
    json cert = tower_certificate(t, verify_tower(t));
    EXPECT_EQ(cert["primes"], json::parse(R"([["3"],["83"]])"));
    EXPECT_EQ(cert["steps"][1]["N"], "6889");
    CertificateCheck ok = verify_certificate(json::parse(cert.dump(2)));
    EXPECT_TRUE(ok.ok()) << ok.mismatch;

    json tampered = cert;
    tampered["steps"][1]["N"] = "6890";
    CertificateCheck bad = verify_certificate(tampered);
    EXPECT_FALSE(bad.reproduced);
    EXPECT_FALSE(bad.ok());

    json bad_prime = cert;
    bad_prime["primes"][1][0] = "5";
    EXPECT_FALSE(verify_certificate(bad_prime).ok());
    bad_prime["primes"][1][0] = "9";
    EXPECT_THROW(verify_certificate(bad_prime), DomainError);
}

TEST(Certificate, FieldJson) {
    for (const auto& f : subfield_lattice(cyclotomic_field(z(24)))) {
        EXPECT_EQ(field_from_json(field_to_json(f)), f);
    }
    EXPECT_EQ(field_to_json(quadratic_field(z(-83))).dump(), R"({"generators":[["41"]],"modulus":"83"})");
}
