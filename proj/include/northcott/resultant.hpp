#ifndef NORTHCOTT_RESULTANT_HPP
#define NORTHCOTT_RESULTANT_HPP

#include <gmpxx.h>

#include "northcott/int_poly.hpp"

namespace northcott {

/// Res(f, g) = lc(f)^deg(g) * prod g(a) over the roots a of f.
/// Subresultant PRS; both inputs must be nonzero.
mpz_class resultant(const IntPoly& f, const IntPoly& g);

/// (-1)^(d(d-1)/2) * Res(f, f') / lc(f). Requires deg f >= 1.
mpz_class discriminant(const IntPoly& f);

}  // namespace northcott

#endif  // NORTHCOTT_RESULTANT_HPP
