#ifndef NORTHCOTT_CYCLOTOMIC_HPP
#define NORTHCOTT_CYCLOTOMIC_HPP

#include <optional>

#include "northcott/int_poly.hpp"

namespace northcott {

/// The n-th cyclotomic polynomial, n >= 1.
IntPoly cyclotomic(unsigned long n);

/// Euler's totient for machine-sized n.
unsigned long euler_phi(unsigned long n);

/// n such that f = Phi_n, or nothing. Throws DomainError when f is not
/// irreducible.
std::optional<unsigned long> root_of_unity_order(const IntPoly& f);

/// As root_of_unity_order, but trusts the caller that f is irreducible
/// and canonical.
std::optional<unsigned long> cyclotomic_index(const IntPoly& f);

}  // namespace northcott

#endif  // NORTHCOTT_CYCLOTOMIC_HPP
