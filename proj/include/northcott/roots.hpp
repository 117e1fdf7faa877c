#ifndef NORTHCOTT_ROOTS_HPP
#define NORTHCOTT_ROOTS_HPP

#include <vector>

#include <gmpxx.h>

#include "northcott/int_poly.hpp"
#include "northcott/real.hpp"

namespace northcott {

/// Closed disk in C with rational (dyadic) center and radius.
struct Disk {
    mpq_class re;
    mpq_class im;
    mpq_class radius;

    /// Real-axis disks are the certificates of real roots.
    bool on_real_axis() const { return im == 0; }
    Interval real_part(mpfr_prec_t prec) const { return Interval(re - radius, re + radius, prec); }
    Interval imag_part(mpfr_prec_t prec) const { return Interval(im - radius, im + radius, prec); }
    /// Enclosure of |z| over the disk.
    Interval modulus(mpfr_prec_t prec) const;
    bool contains(const Disk& inner) const;
    bool intersects_box(const Interval& re_box, const Interval& im_box) const;
};

/*
 * Isolates every complex root of a square-free integer polynomial.
 *
 * Returns deg f pairwise-disjoint disks of radius <= tol, each holding
 * exactly one root. Real roots get disks centred on the real axis and
 * conjugate roots get mirror-image disks. The list is ordered by real
 * part, then imaginary part.
 *
 * Certificate: for an approximation c, the disk of radius
 * n |f(c)| / |f'(c)| contains a root (from f'/f = sum 1/(c - a_i)),
 * evaluated exactly in dyadic arithmetic; n disjoint such disks hold
 * one root each. Working precision doubles until the certificate holds.
 */
std::vector<Disk> isolate_roots(const IntPoly& f, const mpq_class& tol);

/// Cauchy bound 1 + max |a_i / a_n| on the modulus of every root.
mpq_class root_bound(const IntPoly& f);

/// 2^-20 scaled by the root bound.
mpq_class default_isolation_tol(const IntPoly& f);

}  // namespace northcott

#endif  // NORTHCOTT_ROOTS_HPP
