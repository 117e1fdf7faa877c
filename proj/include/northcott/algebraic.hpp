#ifndef NORTHCOTT_ALGEBRAIC_HPP
#define NORTHCOTT_ALGEBRAIC_HPP

#include <compare>
#include <cstddef>
#include <string>

#include <gmpxx.h>

#include "northcott/int_poly.hpp"
#include "northcott/poly_parse.hpp"
#include "northcott/roots.hpp"

namespace northcott {

/*
 * An algebraic number: a canonical irreducible minimal polynomial and the
 * index of one root under the ordering produced by isolate_roots. Two
 * values are equal exactly when both parts agree.
 */
class AlgebraicNumber {
  public:
    /// Validates irreducibility and canonical form; throws DomainError.
    AlgebraicNumber(IntPoly minpoly, std::size_t root_index);

    static AlgebraicNumber rational(const mpq_class& q);
    /// Skips the irreducibility check. For callers that just factored.
    static AlgebraicNumber trusted(IntPoly minpoly, std::size_t root_index, Disk disk);

    const IntPoly& minpoly() const { return minpoly_; }
    std::size_t root_index() const { return index_; }
    int degree() const { return minpoly_.degree(); }
    const Disk& disk() const { return disk_; }

    /// Isolating disk of radius <= tol.
    Disk disk_at(const mpq_class& tol) const;
    /// Same number carrying a tighter disk.
    AlgebraicNumber refined(const mpq_class& tol) const;

    bool is_rational() const { return minpoly_.degree() == 1; }
    /// Throws DomainError unless is_rational().
    mpq_class rational_value() const;
    /// Zero or a root of unity.
    bool is_torsion() const;
    /// Root of the reversed minimal polynomial; throws DomainError on 0.
    AlgebraicNumber inverse() const;

    /// "minpoly[index]", e.g. "x^2 - 2[1]"; rationals print as "p/q".
    std::string to_string() const;

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return a.index_ == b.index_ && a.minpoly_ == b.minpoly_;
    }
    friend std::strong_ordering operator<=>(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        if (auto c = canonical_compare(a.minpoly_, b.minpoly_); c != 0) return c;
        return a.index_ <=> b.index_;
    }

  private:
    AlgebraicNumber(IntPoly minpoly, std::size_t index, Disk disk)
        : minpoly_(std::move(minpoly)), index_(index), disk_(std::move(disk)) {}

    IntPoly minpoly_;
    std::size_t index_;
    Disk disk_;
};

/*
 * g(a) for g = num/den over the rationals. The candidate polynomial is
 * Res_y(m(y), x*den(y) - num(y)); the irreducible factor and root whose
 * disk meets a certified enclosure of g(a) is selected, refining until the
 * match is unique. Throws PoleError when den(a) = 0.
 */
AlgebraicNumber algebraic_eval(const RationalFunction& g, const AlgebraicNumber& a);
AlgebraicNumber algebraic_eval(const IntPoly& g, const AlgebraicNumber& a);

/// Parses "x^2-2[1]" or a rational such as "3/7" or "-2".
AlgebraicNumber parse_algebraic(const std::string& text);

}  // namespace northcott

#endif  // NORTHCOTT_ALGEBRAIC_HPP
