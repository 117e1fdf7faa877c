#include "northcott/resultant.hpp"

#include <utility>

#include "northcott/errors.hpp"

namespace northcott {

namespace {

mpz_class ipow(const mpz_class& base, long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

IntPoly divexact(const IntPoly& f, const mpz_class& d) {
    std::vector<mpz_class> v = f.coeffs();
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    return IntPoly(std::move(v));
}

}  // namespace

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw DomainError("resultant of the zero polynomial");
    if (f.is_constant()) return ipow(f.leading(), g.degree());
    if (g.is_constant()) return ipow(g.leading(), f.degree());

    // Collins/Brown subresultant algorithm on primitive parts.
    mpz_class a = f.content();
    mpz_class b = g.content();
    IntPoly A = f.primitive_part();
    IntPoly B = g.primitive_part();
    mpz_class t = ipow(a, g.degree()) * ipow(b, f.degree());
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    }
    mpz_class gg = 1;
    mpz_class h = 1;
    while (true) {
        const long delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        IntPoly R = pseudo_remainder(A, B);
        A = std::move(B);
        if (R.is_zero()) return 0;
        B = divexact(R, gg * ipow(h, delta));
        gg = A.leading();
        if (delta == 0) {
            // h unchanged: h^(1-0) * g^0
        } else {
            mpz_class num = ipow(gg, delta);
            mpz_class den = ipow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (B.degree() == 0) {
            const long da = A.degree();
            mpz_class num = ipow(B.leading(), da);
            mpz_class den = ipow(h, da - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return s * t * h;
        }
    }
}

mpz_class discriminant(const IntPoly& f) {
    if (f.degree() < 1) throw DomainError("discriminant of a constant polynomial");
    const long d = f.degree();
    mpz_class r = resultant(f, f.derivative());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
    if (((d * (d - 1)) / 2) & 1) r = -r;
    return r;
}

}  // namespace northcott
