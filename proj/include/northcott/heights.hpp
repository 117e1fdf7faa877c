#ifndef NORTHCOTT_HEIGHTS_HPP
#define NORTHCOTT_HEIGHTS_HPP

#include <vector>

#include <gmpxx.h>

#include "northcott/algebraic.hpp"
#include "northcott/int_poly.hpp"
#include "northcott/roots.hpp"

namespace northcott {

/// Certified enclosure [lo, hi] of a non-negative real.
struct HeightInterval {
    mpq_class lo;
    mpq_class hi;

    bool exact() const { return lo == hi; }
    mpq_class width() const { return hi - lo; }
    double midpoint() const { return mpq_class((lo + hi) / 2).get_d(); }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
};

/// Default tolerance on heights and measures.
mpq_class default_height_tol();

/// |lc| * prod max(1, |root|), width <= tol. Cyclotomic and monomial
/// factors contribute exactly 1, so products of them come out exact.
HeightInterval mahler_measure(const IntPoly& f, const mpq_class& tol);

/// Measure of an irreducible polynomial from certified root disks.
/// The enclosure is as wide as the disks make it; tol sets the working
/// precision when disks are exact.
HeightInterval measure_from_disks(const IntPoly& f, const std::vector<Disk>& disks, const mpq_class& tol = 1);

/// (1/degree) log of a measure enclosure.
HeightInterval height_from_measure(const HeightInterval& m, int degree, const mpq_class& tol);

/// (1/deg) log M(minpoly). Rationals p/q give log max(|p|, |q|), torsion
/// gives exactly 0.
HeightInterval weil_height(const AlgebraicNumber& a, const mpq_class& tol);

/// Certified h(a) < t, refining until decided. Throws InvariantViolation
/// if h(a) sits on t to within 2^-300.
bool height_below(const AlgebraicNumber& a, const mpq_class& t);

}  // namespace northcott

#endif  // NORTHCOTT_HEIGHTS_HPP
