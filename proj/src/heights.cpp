#include "northcott/heights.hpp"

#include <algorithm>
#include <optional>

#include "northcott/cyclotomic.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/real.hpp"

namespace northcott {

namespace {

long bits_below(const mpq_class& tol) {
    return static_cast<long>(mpz_sizeinbase(tol.get_den_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(tol.get_num_mpz_t(), 2));
}

mpfr_prec_t working_prec(const mpq_class& tol, long magnitude_bits) {
    return static_cast<mpfr_prec_t>(std::max(64L, bits_below(tol) + magnitude_bits + 64));
}

long norm_bits(const IntPoly& f) {
    mpz_class s = 0;
    for (const auto& c : f.coeffs()) s += abs(c);
    return static_cast<long>(mpz_sizeinbase(s.get_mpz_t(), 2));
}

HeightInterval to_height(const Interval& v) {
    HeightInterval h{v.lo().to_q(), v.hi().to_q()};
    if (h.lo < 0) h.lo = 0;
    return h;
}

// 1 exactly for x and cyclotomic polynomials, max(|a|,|b|) for ax+b.
std::optional<mpz_class> exact_measure(const IntPoly& g) {
    if (g.degree() == 1) return mpz_class(std::max<mpz_class>(abs(g[0]), abs(g[1])));
    if (cyclotomic_index(g)) return mpz_class(1);
    return std::nullopt;
}

}  // namespace

mpq_class default_height_tol() { return mpq_class(1, 1000000000); }

HeightInterval measure_from_disks(const IntPoly& f, const std::vector<Disk>& disks, const mpq_class& tol) {
    // Exact disks (radius 0) still need enough bits for the target width.
    mpq_class rmin = std::min<mpq_class>(tol, 1);
    for (const auto& d : disks) {
        if (d.radius > 0 && d.radius < rmin) rmin = d.radius;
    }
    const mpfr_prec_t prec = working_prec(rmin, norm_bits(f));
    Interval m(mpz_class(abs(f.leading())), prec);
    for (const auto& d : disks) {
        mpq_class c2 = d.re * d.re + d.im * d.im;
        Interval c = sqrt(Interval(c2, prec));
        Interval r(d.radius, prec);
        Real lo(prec), hi(prec);
        mpfr_sub(lo.get(), c.lo().get(), r.hi().get(), MPFR_RNDD);
        if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
        mpfr_add(hi.get(), c.hi().get(), r.hi().get(), MPFR_RNDU);
        m = m * max_one(Interval(std::move(lo), std::move(hi)));
    }
    return to_height(m);
}

HeightInterval mahler_measure(const IntPoly& f, const mpq_class& tol) {
    if (f.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
    if (tol <= 0) throw DomainError("tolerance must be positive");
    Factorization fz = factor(f);
    mpz_class exact = abs(fz.content);
    struct Pending {
        IntPoly poly;
        unsigned mult;
        mpq_class tol;
    };
    std::vector<Pending> pending;
    for (const auto& fac : fz.factors) {
        if (auto e = exact_measure(fac.poly)) {
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), e->get_mpz_t(), fac.multiplicity);
            exact *= p;
        } else {
            pending.push_back({fac.poly, fac.multiplicity, default_isolation_tol(fac.poly)});
        }
    }
    if (pending.empty()) return {mpq_class(exact), mpq_class(exact)};

    long mag = static_cast<long>(mpz_sizeinbase(exact.get_mpz_t(), 2));
    for (const auto& p : pending) mag += norm_bits(p.poly) * p.mult;
    for (int round = 0; round < 64; ++round) {
        const mpfr_prec_t prec = working_prec(tol, mag);
        Interval m(exact, prec);
        for (const auto& p : pending) {
            HeightInterval part = measure_from_disks(p.poly, isolate_roots(p.poly, p.tol), p.tol);
            Interval pi(part.lo, part.hi, prec);
            for (unsigned k = 0; k < p.mult; ++k) m = m * pi;
        }
        HeightInterval out = to_height(m);
        if (out.width() <= tol) return out;
        // Width scales linearly in the disk radii.
        mpq_class shrink = tol / out.width() / 4;
        for (auto& p : pending) p.tol *= shrink;
    }
    throw InvariantViolation("Mahler measure refinement did not converge");
}

HeightInterval height_from_measure(const HeightInterval& m, int degree, const mpq_class& tol) {
    const mpfr_prec_t prec = working_prec(tol, static_cast<long>(mpz_sizeinbase(m.hi.get_num_mpz_t(), 2)));
    return to_height(log(Interval(m.lo, m.hi, prec)).scaled(mpq_class(1, degree)));
}

HeightInterval weil_height(const AlgebraicNumber& a, const mpq_class& tol) {
    if (tol <= 0) throw DomainError("tolerance must be positive");
    if (a.is_torsion()) return {0, 0};
    const IntPoly& f = a.minpoly();
    const mpq_class d = f.degree();
    if (a.is_rational()) {
        // max(|p|, |q|) is already the measure of qx - p.
        mpz_class hmax = std::max<mpz_class>(abs(f[0]), abs(f[1]));
        for (mpfr_prec_t prec = working_prec(tol, 0);; prec *= 2) {
            HeightInterval h = to_height(log(Interval(hmax, prec)));
            if (h.width() <= tol) return h;
        }
    }
    // log M has width at most width(M) since M >= 1.
    mpq_class mtol = tol * d / 2;
    for (int round = 0; round < 64; ++round) {
        HeightInterval m = measure_from_disks(f, isolate_roots(f, mtol), mtol);
        HeightInterval h = height_from_measure(m, f.degree(), tol);
        if (h.width() <= tol) return h;
        mtol *= std::min<mpq_class>(mpq_class(1, 4), tol / h.width() / 4);
    }
    throw InvariantViolation("height refinement did not converge");
}

bool height_below(const AlgebraicNumber& a, const mpq_class& t) {
    if (a.is_torsion()) return t > 0;
    mpq_class tol(1, 1 << 16);
    for (int round = 0; round < 24; ++round) {
        HeightInterval h = weil_height(a, tol);
        if (h.hi < t) return true;
        if (h.lo >= t) return false;
        tol /= mpq_class(mpz_class(1) << 12);
    }
    throw InvariantViolation("height comparison undecided at 2^-300");
}

}  // namespace northcott
