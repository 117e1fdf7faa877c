#ifndef NORTHCOTT_NUMBER_THEORY_HPP
#define NORTHCOTT_NUMBER_THEORY_HPP

#include <utility>
#include <vector>

#include <gmpxx.h>

namespace northcott {

using PrimePowers = std::vector<std::pair<mpz_class, unsigned>>;

/// Baillie-PSW plus Miller-Rabin rounds (GMP). No known counterexample;
/// not a proof of primality.
bool is_prime(const mpz_class& n);

/// Prime factorization of |n| >= 1, primes ascending. Trial division,
/// then Brent's variant of Pollard rho.
PrimePowers factorize(const mpz_class& n);

unsigned valuation(mpz_class n, const mpz_class& p);

/// Smallest prime p > above with p = 1 mod n.
mpz_class next_prime_one_mod(const mpz_class& above, const mpz_class& n);

/// Smallest g that generates (Z/p^k)^* for every k >= 1 (p odd prime).
mpz_class primitive_root_prime_power(const mpz_class& p);

/// x in [0, order) with g^x = h mod m, where g has exactly the given order
/// with known factorization. Pohlig-Hellman with baby-step giant-step.
/// Throws DomainError if h is not a power of g.
mpz_class discrete_log(const mpz_class& g, const mpz_class& h, const mpz_class& m, const mpz_class& order,
                       const PrimePowers& order_factors);

}  // namespace northcott

#endif  // NORTHCOTT_NUMBER_THEORY_HPP
