#ifndef NORTHCOTT_ABELIAN_HPP
#define NORTHCOTT_ABELIAN_HPP

#include <compare>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "northcott/number_theory.hpp"

namespace northcott {

/*
 * Cyclic factor of (Z/m)^*. Odd prime powers p^k are generated by the
 * smallest g that is a primitive root modulo every power of p; the 2-part
 * uses -1 (mod 4 and up) and 5 (mod 8 and up).
 */
struct UnitComponent {
    enum class Kind { OddPrimePower, TwoSign, TwoPower };
    Kind kind;
    mpz_class prime;
    unsigned exponent;  // k in p^k
    mpz_class order;

    friend bool operator==(const UnitComponent&, const UnitComponent&) = default;
};

/// Exponents of a Dirichlet character on the component generators:
/// chi(g_j) = exp(2 pi i a_j / order_j).
using Character = std::vector<mpz_class>;

/*
 * An abelian number field, stored as its group of Dirichlet characters.
 * The modulus is always the conductor of the field, so equal fields have
 * identical representations.
 */
class AbelianField {
  public:
    /// The field Q.
    AbelianField();

    /// Field whose character group is generated by gens modulo m, where
    /// m = prod p^k from modulus_factors.
    static AbelianField from_generators(const PrimePowers& modulus_factors, const std::vector<Character>& gens);

    const mpz_class& modulus() const { return modulus_; }
    const PrimePowers& modulus_factors() const { return factors_; }
    const std::vector<UnitComponent>& components() const { return components_; }
    /// The character group, sorted.
    const std::vector<Character>& characters() const { return characters_; }
    std::size_t degree() const { return characters_.size(); }
    bool is_rational() const { return characters_.size() == 1; }

    mpz_class conductor_of(const Character& chi) const;
    /// |discriminant| = product of the conductors.
    mpz_class discriminant() const;
    /// Factorization of the discriminant, primes ascending.
    PrimePowers discriminant_factors() const;
    std::optional<mpz_class> max_ramified_prime() const;
    /// e * f at the prime p.
    mpz_class local_degree(const mpz_class& p) const;
    /// Ramification index and residue degree at p.
    std::pair<mpz_class, mpz_class> local_ef(const mpz_class& p) const;

    /// sub is a subfield of this field.
    bool contains(const AbelianField& sub) const;

    /// Irredundant generating set, chosen greedily in character order.
    std::vector<Character> generators() const;

    std::string to_string() const;

    friend bool operator==(const AbelianField& a, const AbelianField& b) {
        return a.modulus_ == b.modulus_ && a.characters_ == b.characters_;
    }
    /// Degree first, then modulus, then characters.
    friend std::strong_ordering operator<=>(const AbelianField& a, const AbelianField& b);

    /// The characters re-expressed modulo a multiple of the conductor.
    std::vector<Character> characters_at(const PrimePowers& target) const;

  private:
    void canonicalize();
    PrimePowers factorize_conductor(const Character& chi) const;

    mpz_class modulus_ = 1;
    PrimePowers factors_;
    std::vector<UnitComponent> components_;
    std::vector<Character> characters_;
};

inline std::ostream& operator<<(std::ostream& os, const AbelianField& f) { return os << f.to_string(); }

std::vector<UnitComponent> unit_components(const PrimePowers& modulus_factors);

/// Q(sqrt D) for a non-square D != 0 (any integer; reduced to its
/// fundamental discriminant). Throws DomainError for squares.
AbelianField quadratic_field(const mpz_class& D);

/// The degree-n subfield of Q(zeta_p), p an odd prime, n | p - 1, n >= 2.
AbelianField cyclic_subfield_of_cyclotomic(const mpz_class& p, const mpz_class& n);

/// Q(zeta_n).
AbelianField cyclotomic_field(const mpz_class& n);

AbelianField compositum(const AbelianField& a, const AbelianField& b);
AbelianField intersection(const AbelianField& a, const AbelianField& b);

/// Every subfield, sorted by degree then canonical order.
std::vector<AbelianField> subfield_lattice(const AbelianField& f);

/// Every M with lower <= M <= upper. Throws DomainError unless lower is a
/// subfield of upper.
std::vector<AbelianField> intermediate_fields(const AbelianField& lower, const AbelianField& upper);

/*
 * Field expressions for the command line:
 *
 *   field := term ('*' term)*          '*' is the compositum
 *   term  := 'Q' | 'sqrt(' int ')' | 'zeta(' int ')' | 'cyclic(' p ',' n ')'
 *
 * Raises ParseError with the 0-based offset; DomainError from the
 * constructors passes through.
 */
AbelianField parse_field(std::string_view text);

/// N(Delta_{M/L}) = |Delta_M| / |Delta_L|^[M:L]. DomainError unless L is a
/// subfield of M; InvariantViolation if the division is inexact.
mpz_class relative_discriminant_norm(const AbelianField& L, const AbelianField& M);

}  // namespace northcott

#endif  // NORTHCOTT_ABELIAN_HPP
