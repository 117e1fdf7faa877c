#ifndef NORTHCOTT_FACTOR_HPP
#define NORTHCOTT_FACTOR_HPP

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "northcott/int_poly.hpp"

namespace northcott {

struct Factor {
    IntPoly poly;  // irreducible, canonical
    unsigned multiplicity;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// f = content * prod poly^multiplicity. Factors are sorted by
/// canonical_compare; the content carries the sign of f.
struct Factorization {
    mpz_class content;
    std::vector<Factor> factors;

    IntPoly expand() const;
};

/// Complete factorization over Z (Zassenhaus: modular factorization,
/// Hensel lifting, subset recombination).
Factorization factor(const IntPoly& f);

/// Square-free decomposition of a primitive polynomial: pairs (g_i, i)
/// with f = +-prod g_i^i and the g_i pairwise coprime, square-free and
/// canonical. Constant g_i are omitted.
std::vector<Factor> squarefree_decomposition(const IntPoly& f);

/// Irreducibility in Q[x]. Constants are not irreducible.
bool is_irreducible(const IntPoly& f);

/// Canonical product of the distinct irreducible factors.
IntPoly squarefree_part(const IntPoly& f);

}  // namespace northcott

#endif  // NORTHCOTT_FACTOR_HPP
