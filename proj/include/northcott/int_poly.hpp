#ifndef NORTHCOTT_INT_POLY_HPP
#define NORTHCOTT_INT_POLY_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace northcott {

/*
 * Dense univariate polynomial with arbitrary-precision integer
 * coefficients. coeffs()[i] is the coefficient of x^i. Trailing zeros are
 * never stored, so the zero polynomial has an empty coefficient vector
 * and degree -1.
 */
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(const mpz_class& c, std::size_t degree);
    static IntPoly x() { return monomial(1, 1); }

    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    /// Coefficient of x^i, zero past the degree.
    mpz_class operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
    const mpz_class& leading() const;

    mpz_class content() const;
    IntPoly primitive_part() const;
    /// Primitive with positive leading coefficient.
    IntPoly canonical() const;
    bool is_canonical() const;

    IntPoly derivative() const;
    /// x^deg * f(1/x).
    IntPoly reversed() const;
    /// f(-x).
    IntPoly negated_argument() const;

    mpz_class eval(const mpz_class& x) const;
    mpq_class eval(const mpq_class& x) const;

    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& rhs);
    IntPoly& operator-=(const IntPoly& rhs);
    IntPoly& operator*=(const IntPoly& rhs);
    IntPoly& operator*=(const mpz_class& c);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
    friend IntPoly operator*(IntPoly a, const mpz_class& c) { return a *= c; }
    friend IntPoly operator*(const mpz_class& c, IntPoly a) { return a *= c; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const;

  private:
    void trim();

    std::vector<mpz_class> coeffs_;
};

/// Total order used for canonical listings: degree first, then the
/// coefficients from the leading one downwards.
std::strong_ordering canonical_compare(const IntPoly& a, const IntPoly& b);

struct CanonicalLess {
    bool operator()(const IntPoly& a, const IntPoly& b) const { return canonical_compare(a, b) < 0; }
};

std::ostream& operator<<(std::ostream& os, const IntPoly& f);

IntPoly pow(IntPoly base, unsigned exponent);

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Quotient a / b when b divides a in Z[x], nothing otherwise.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);

/// True when divisor | dividend in Q[x].
bool divides_over_q(const IntPoly& divisor, const IntPoly& dividend);

/// Canonical (primitive, positive leading coefficient) gcd over Q.
/// gcd(0, 0) is the zero polynomial.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

}  // namespace northcott

#endif  // NORTHCOTT_INT_POLY_HPP
