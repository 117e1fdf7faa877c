#ifndef NORTHCOTT_TOWERS_HPP
#define NORTHCOTT_TOWERS_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

#include "northcott/abelian.hpp"
#include "northcott/heights.hpp"

namespace northcott {

/// Finite abelian group as a product of cyclic factors, e.g. "2" or "2x3".
struct GroupSpec {
    std::vector<unsigned long> factors;

    unsigned long order() const;
    unsigned long exponent() const;
    std::string to_string() const;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Accepts "2", "C2", "2x3", "C2xC3". Named non-abelian groups (S3, D4,
/// Q8, A4, ...) raise Unsupported; anything else malformed raises
/// ParseError.
GroupSpec parse_group(const std::string& text);

/// Comma-separated steps: "2,2,2" or "2x2,3".
std::vector<GroupSpec> parse_groups(const std::string& text);

/*
 * Q = L_0 < L_1 < ... < L_n with L_i = L_{i-1} K_i. K_i is the compositum
 * of cyclic subfields of Q(zeta_p), one prime per cyclic factor of G_i.
 */
struct TowerSpec {
    std::vector<GroupSpec> groups;
    std::vector<std::vector<mpz_class>> primes;  // per step, one per factor
    std::vector<AbelianField> K;                 // K[0] = Q
    std::vector<AbelianField> L;                 // L[0] = Q

    std::size_t steps() const { return groups.size(); }
};

struct StepReport {
    std::size_t step = 0;
    AbelianField witness;
    mpz_class norm;      // N(Delta_{M/L_prev})
    mpz_class exponent;  // [M:Q][M:L_prev]
    HeightInterval quantity;
    mpz_class p_prev = 1;
    bool disjoint = true;      // L_prev meets K_i in Q
    bool exceeds_prev = true;  // quantity > p_prev
    bool increasing = true;    // quantity above the previous step's
    bool escalation = true;    // every H != Q in K_i ramifies above p_prev^{|G_i|^2}

    bool ok() const { return disjoint && exceeds_prev && increasing && escalation; }
};

struct TowerReport {
    std::vector<StepReport> steps;

    bool ok() const;
};

/// Largest ramified prime, 1 for Q.
mpz_class largest_ramified_prime(const AbelianField& f);

/// Minimum of N(Delta_{M/L_prev})^{1/([M:Q][M:L_prev])} over
/// L_prev < M <= L_cur, with its witness. Ties go to the smaller [M:Q],
/// then canonical field order. p_prev is set from L_prev.
StepReport step_quantity(const AbelianField& L_prev, const AbelianField& L_cur);

/// Searches primes p = 1 mod exponent(G_i), p > p_{K_{i-1}}^{|G_i|^2} and
/// p >= start_hint, fresh for every cyclic factor.
TowerSpec build_tower(const std::vector<GroupSpec>& groups, const mpz_class& start_hint = 2);

/// Rebuilds the fields from recorded primes without searching. Throws
/// DomainError if a prime is composite, repeated, or not 1 mod its factor.
TowerSpec tower_from_primes(const std::vector<GroupSpec>& groups, const std::vector<std::vector<mpz_class>>& primes);

/// Checks the first `steps` steps (all when steps exceeds the tower).
TowerReport verify_tower(const TowerSpec& spec, std::size_t steps = static_cast<std::size_t>(-1));

}  // namespace northcott

#endif  // NORTHCOTT_TOWERS_HPP
