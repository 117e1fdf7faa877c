#include "northcott/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>

#include "northcott/errors.hpp"

namespace northcott {

namespace {

using cdouble = std::complex<double>;

struct Cmp {
    Real re;
    Real im;
};

Cmp cmul(const Cmp& a, const Cmp& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cmp cadd(const Cmp& a, const Cmp& b) { return {a.re + b.re, a.im + b.im}; }
Cmp csub(const Cmp& a, const Cmp& b) { return {a.re - b.re, a.im - b.im}; }
Real cnorm(const Cmp& a) { return a.re * a.re + a.im * a.im; }
Cmp cdiv(const Cmp& a, const Cmp& b) {
    Real d = cnorm(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Cmp with_prec(const Cmp& z, mpfr_prec_t prec) {
    Cmp r{Real(prec), Real(prec)};
    mpfr_set(r.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_set(r.im.get(), z.im.get(), MPFR_RNDN);
    return r;
}

// floor(log2 |q|) for q != 0, roughly.
long log2_floor(const mpq_class& q) {
    long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
    return e - 1;
}

std::vector<cdouble> initial_points(const std::vector<double>& a) {
    const std::size_t n = a.size() - 1;
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        r = std::max(r, std::pow(std::abs(a[i] / a[n]), 1.0 / static_cast<double>(n - i)));
    }
    if (r == 0) r = 1;
    std::vector<cdouble> z(n);
    const double pi = std::acos(-1.0);
    for (std::size_t k = 0; k < n; ++k) {
        double t = 2 * pi * static_cast<double>(k) / static_cast<double>(n) + 0.7;
        z[k] = std::polar(r, t);
    }
    return z;
}

std::optional<std::vector<double>> double_coeffs(const IntPoly& f) {
    std::vector<double> a;
    for (const auto& c : f.coeffs()) {
        if (mpz_sizeinbase(c.get_mpz_t(), 2) > 1000) return std::nullopt;
        a.push_back(c.get_d());
    }
    return a;
}

void horner(const std::vector<double>& a, cdouble z, cdouble& p, cdouble& dp) {
    p = a.back();
    dp = 0;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
    }
}

bool aberth_double(const std::vector<double>& a, std::vector<cdouble>& z) {
    const std::size_t n = z.size();
    for (int iter = 0; iter < 500; ++iter) {
        bool done = true;
        for (std::size_t i = 0; i < n; ++i) {
            cdouble p, dp;
            horner(a, z[i], p, dp);
            if (p == 0.0) continue;
            cdouble ratio = p / dp;
            cdouble s = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) s += 1.0 / (z[i] - z[j]);
            }
            cdouble w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
            z[i] -= w;
            if (std::abs(w) > 1e-14 * std::max(1.0, std::abs(z[i]))) done = false;
        }
        if (done) return true;
    }
    return false;
}

void polish_double(const std::vector<double>& a, std::vector<cdouble>& z) {
    for (auto& zi : z) {
        for (int iter = 0; iter < 8; ++iter) {
            cdouble p, dp;
            horner(a, zi, p, dp);
            if (p == 0.0 || dp == 0.0) break;
            cdouble step = p / dp;
            zi -= step;
            if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(zi))) break;
        }
    }
}

struct MpPoly {
    std::vector<Real> a;
    MpPoly(const IntPoly& f, mpfr_prec_t prec) {
        for (const auto& c : f.coeffs()) a.emplace_back(c, prec);
    }
    void eval(const Cmp& z, Cmp& p, Cmp& dp, mpfr_prec_t prec) const {
        p = Cmp{a.back(), Real(prec)};
        dp = Cmp{Real(prec), Real(prec)};
        for (std::size_t k = a.size() - 1; k-- > 0;) {
            dp = cadd(cmul(dp, z), p);
            p = cmul(p, z);
            p.re = p.re + a[k];
        }
    }
};

// Gauss-Seidel Aberth at precision prec starting from z.
void aberth_mp(const IntPoly& f, std::vector<Cmp>& z, mpfr_prec_t prec) {
    MpPoly mp(f, prec);
    for (auto& zi : z) zi = with_prec(zi, prec);
    const std::size_t n = z.size();
    Real one(1.0, prec);
    Real eps(1.0, prec);
    mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(prec) + 12, MPFR_RNDN);
    for (int iter = 0; iter < 100 + 20 * static_cast<int>(n); ++iter) {
        bool done = true;
        for (std::size_t i = 0; i < n; ++i) {
            Cmp p, dp;
            mp.eval(z[i], p, dp, prec);
            if (p.re.is_zero() && p.im.is_zero()) continue;
            if (dp.re.is_zero() && dp.im.is_zero()) {
                done = false;
                z[i].re = z[i].re + eps;
                continue;
            }
            Cmp ratio = cdiv(p, dp);
            Cmp s{Real(prec), Real(prec)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                Cmp d = csub(z[i], z[j]);
                if (d.re.is_zero() && d.im.is_zero()) continue;
                s = cadd(s, cdiv(Cmp{one, Real(prec)}, d));
            }
            Cmp denom = csub(Cmp{one, Real(prec)}, cmul(ratio, s));
            if (denom.re.is_zero() && denom.im.is_zero()) continue;
            Cmp w = cdiv(ratio, denom);
            z[i] = csub(z[i], w);
            Real scale = cnorm(z[i]);
            if (scale < one) scale = one;
            if (cnorm(w) > scale * eps * eps) done = false;
        }
        if (done) return;
    }
}

void polish_mp(const IntPoly& f, std::vector<Cmp>& z, mpfr_prec_t prec) {
    MpPoly mp(f, prec);
    Real one(1.0, prec);
    Real eps(1.0, prec);
    mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(prec) + 4, MPFR_RNDN);
    for (auto& zi : z) {
        zi = with_prec(zi, prec);
        for (int iter = 0; iter < 64; ++iter) {
            Cmp p, dp;
            mp.eval(zi, p, dp, prec);
            if ((p.re.is_zero() && p.im.is_zero()) || (dp.re.is_zero() && dp.im.is_zero())) break;
            Cmp step = cdiv(p, dp);
            zi = csub(zi, step);
            Real scale = cnorm(zi);
            if (scale < one) scale = one;
            if (!(cnorm(step) > scale * eps * eps)) break;
        }
    }
}

struct Center {
    mpq_class re;
    mpq_class im;
    long partner = -1;  // index of the conjugate, -1 for real candidates
};

mpq_class dist2(const mpq_class& ar, const mpq_class& ai, const mpq_class& br, const mpq_class& bi) {
    mpq_class dr = ar - br;
    mpq_class di = ai - bi;
    return dr * dr + di * di;
}

// Pairs every approximation with its nearest conjugate image. Distances
// are compared in double unless the roots need more precision than that;
// certify() checks the outcome exactly either way.
std::optional<std::vector<Center>> symmetrize(std::vector<Center> c, bool exact) {
    const std::size_t n = c.size();
    std::vector<cdouble> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = {c[i].re.get_d(), c[i].im.get_d()};
    std::vector<std::size_t> nearest(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        if (exact) {
            mpq_class best_d = -1;
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class d = dist2(c[i].re, -c[i].im, c[j].re, c[j].im);
                if (best_d < 0 || d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
        } else {
            double best_d = -1;
            for (std::size_t j = 0; j < n; ++j) {
                double d = std::norm(std::conj(z[i]) - z[j]);
                if (best_d < 0 || d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
        }
        nearest[i] = best;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = nearest[i];
        if (j == i) {
            c[i].im = 0;
            c[i].partner = -1;
        } else {
            if (nearest[j] != i) return std::nullopt;
            if (i < j) {
                if (c[i].im == 0) return std::nullopt;
                c[j].re = c[i].re;
                c[j].im = -c[i].im;
            }
            c[i].partner = static_cast<long>(j);
        }
    }
    return c;
}

unsigned long dyadic_exponent(const mpq_class& q) {
    const mpz_class& d = q.get_den();
    unsigned long e = mpz_scan1(d.get_mpz_t(), 0);
    if (mpz_sizeinbase(d.get_mpz_t(), 2) != e + 1) throw InvariantViolation("non-dyadic root center");
    return e;
}

// g evaluated at (a + bi) / 2^e, scaled by 2^(e deg g).
void eval_dyadic(const IntPoly& g, const mpz_class& a, const mpz_class& b, unsigned long e, mpz_class& vr,
                 mpz_class& vi) {
    const auto& c = g.coeffs();
    const int n = g.degree();
    vr = c.back();
    vi = 0;
    mpz_class t, shifted;
    for (int k = n - 1; k >= 0; --k) {
        t = vr * a - vi * b;
        vi = vr * b + vi * a;
        vr = t;
        mpz_mul_2exp(shifted.get_mpz_t(), c[static_cast<std::size_t>(k)].get_mpz_t(),
                     e * static_cast<unsigned long>(n - k));
        vr += shifted;
    }
}

// Upper bound on n |f(c)| / |f'(c)|, or nullopt when f'(c) = 0.
std::optional<mpq_class> inclusion_radius(const IntPoly& f, const IntPoly& df, const Center& c) {
    unsigned long e = std::max(dyadic_exponent(c.re), dyadic_exponent(c.im));
    mpz_class a, b;
    mpz_mul_2exp(a.get_mpz_t(), c.re.get_num_mpz_t(), e - dyadic_exponent(c.re));
    mpz_mul_2exp(b.get_mpz_t(), c.im.get_num_mpz_t(), e - dyadic_exponent(c.im));
    mpz_class vr, vi, wr, wi;
    eval_dyadic(f, a, b, e, vr, vi);
    if (vr == 0 && vi == 0) return mpq_class(0);
    eval_dyadic(df, a, b, e, wr, wi);
    mpz_class w2 = wr * wr + wi * wi;
    if (w2 == 0) return std::nullopt;
    // f(c) = V / 2^(en), f'(c) = W / 2^(e(n-1)).
    const unsigned long n = static_cast<unsigned long>(f.degree());
    mpz_class num = (vr * vr + vi * vi) * (n * n);
    mpz_class den;
    mpz_mul_2exp(den.get_mpz_t(), w2.get_mpz_t(), 2 * e);
    mpq_class r2(num, den);
    r2.canonicalize();
    Real r(r2, 64, MPFR_RNDU);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDU);
    return r.to_q();
}

bool disks_disjoint(const Disk& a, const Disk& b) {
    mpq_class s = a.radius + b.radius;
    return dist2(a.re, a.im, b.re, b.im) > s * s;
}

std::optional<std::vector<Disk>> certify(const IntPoly& f, const IntPoly& df, const std::vector<Center>& c) {
    std::vector<Disk> disks;
    disks.reserve(c.size());
    for (const auto& ci : c) {
        auto r = inclusion_radius(f, df, ci);
        if (!r) return std::nullopt;
        // A non-real root disk must stay off the real axis so it cannot
        // capture the conjugate's partner.
        if (ci.partner >= 0 && abs(ci.im) <= *r) return std::nullopt;
        disks.push_back(Disk{ci.re, ci.im, *r});
    }
    for (std::size_t i = 0; i < disks.size(); ++i) {
        for (std::size_t j = i + 1; j < disks.size(); ++j) {
            if (!disks_disjoint(disks[i], disks[j])) return std::nullopt;
        }
    }
    return disks;
}

long needed_bits(const mpq_class& bound, const mpq_class& tol) { return log2_floor(bound) - log2_floor(tol) + 10; }

}  // namespace

Interval Disk::modulus(mpfr_prec_t prec) const {
    // Box enclosure of the disk.
    return sqrt(square(real_part(prec)) + square(imag_part(prec)));
}

bool Disk::contains(const Disk& inner) const {
    if (inner.radius > radius) return false;
    mpq_class s = radius - inner.radius;
    return dist2(re, im, inner.re, inner.im) <= s * s;
}

bool Disk::intersects_box(const Interval& re_box, const Interval& im_box) const {
    // Distance from the center to the box, compared exactly.
    auto axis_gap = [](const mpq_class& c, const Interval& box) {
        mpq_class lo = box.lo().to_q();
        mpq_class hi = box.hi().to_q();
        if (c < lo) return mpq_class(lo - c);
        if (c > hi) return mpq_class(c - hi);
        return mpq_class(0);
    };
    mpq_class gr = axis_gap(re, re_box);
    mpq_class gi = axis_gap(im, im_box);
    return gr * gr + gi * gi <= radius * radius;
}

mpq_class root_bound(const IntPoly& f) {
    if (f.degree() < 1) throw DomainError("root bound of a constant");
    mpq_class m = 0;
    const mpz_class lc = abs(f.leading());
    for (int i = 0; i < f.degree(); ++i) {
        mpq_class q(abs(f[static_cast<std::size_t>(i)]), lc);
        q.canonicalize();
        if (q > m) m = q;
    }
    return m + 1;
}

mpq_class default_isolation_tol(const IntPoly& f) {
    mpq_class t = root_bound(f);
    mpq_class s(1);
    s /= mpq_class(mpz_class(1) << 20);
    return t * s;
}

std::vector<Disk> isolate_roots(const IntPoly& f, const mpq_class& tol) {
    if (f.degree() < 1) throw DomainError("root isolation needs a non-constant polynomial");
    if (tol <= 0) throw DomainError("root isolation tolerance must be positive");
    const IntPoly df = f.derivative();
    if (gcd(f, df).degree() > 0) throw DomainError("root isolation needs a square-free polynomial");
    if (f.degree() == 1) {
        mpq_class r(-f[0], f[1]);
        r.canonicalize();
        return {Disk{r, 0, 0}};
    }

    const std::size_t n = static_cast<std::size_t>(f.degree());
    const mpq_class bound = root_bound(f);
    // Real parts closer than this are treated as equal when ordering.
    mpq_class tie_gap = bound / mpq_class(mpz_class(1) << 64);
    mpq_class tol_eff = tol;

    std::vector<Cmp> approx;
    std::optional<std::vector<double>> dc = double_coeffs(f);
    std::vector<cdouble> dz;
    bool double_ok = false;
    if (dc) {
        dz = initial_points(*dc);
        double_ok = aberth_double(*dc, dz);
    }
    mpfr_prec_t work_prec = 53;
    if (!double_ok) {
        work_prec = 128;
        if (dz.empty()) {
            dz.resize(n);
            for (std::size_t k = 0; k < n; ++k) dz[k] = std::polar(bound.get_d(), 0.7 + 6.283 * static_cast<double>(k) / static_cast<double>(n));
        }
    }
    for (auto& z : dz) approx.push_back(Cmp{Real(z.real(), work_prec), Real(z.imag(), work_prec)});
    if (!double_ok) aberth_mp(f, approx, work_prec);

    long extra = 0;
    for (int attempt = 0; attempt < 80; ++attempt) {
        long bits = needed_bits(bound, tol_eff) + extra;
        std::vector<Center> centers(n);
        if (double_ok && work_prec == 53 && extra == 0) {
            std::vector<cdouble> pz = dz;
            polish_double(*dc, pz);
            for (std::size_t i = 0; i < n; ++i) {
                centers[i].re = pz[i].real();
                centers[i].im = pz[i].imag();
            }
        } else {
            mpfr_prec_t pp = std::max<mpfr_prec_t>(work_prec, static_cast<mpfr_prec_t>(bits + 16));
            polish_mp(f, approx, pp);
            for (std::size_t i = 0; i < n; ++i) {
                centers[i].re = approx[i].re.to_q();
                centers[i].im = approx[i].im.to_q();
            }
        }

        auto sym = symmetrize(std::move(centers), work_prec > 53);
        std::optional<std::vector<Disk>> disks;
        if (sym) disks = certify(f, df, *sym);
        if (!disks) {
            work_prec = std::max<mpfr_prec_t>(2 * work_prec, 128);
            aberth_mp(f, approx, work_prec);
            continue;
        }

        bool too_wide = false;
        for (const auto& d : *disks) too_wide = too_wide || d.radius > tol_eff;
        if (too_wide) {
            extra += 32;
            continue;
        }

        // Certified ordering: distinct real parts must be separated.
        const auto& c = *sym;
        bool refine = false;
        for (std::size_t i = 0; i < n && !refine; ++i) {
            for (std::size_t j = i + 1; j < n && !refine; ++j) {
                if (c[i].partner == static_cast<long>(j)) continue;
                const Disk& a = (*disks)[i];
                const Disk& b = (*disks)[j];
                bool overlap = abs(a.re - b.re) <= a.radius + b.radius;
                mpq_class rmax = std::max(a.radius, b.radius);
                if (overlap && rmax * 8 > tie_gap) refine = true;
                if (abs(a.re - b.re) * 2 <= tie_gap && abs(a.im - b.im) <= a.radius + b.radius &&
                    rmax * 8 > tie_gap)
                    refine = true;
            }
        }
        if (refine) {
            mpq_class t = tie_gap / 8;
            if (t >= tol_eff) throw InvariantViolation("root ordering could not be certified");
            tol_eff = t;
            continue;
        }

        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        const auto& d = *disks;
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            if (abs(d[i].re - d[j].re) * 2 > tie_gap && c[i].partner != static_cast<long>(j)) return d[i].re < d[j].re;
            return d[i].im < d[j].im;
        });
        std::vector<Disk> out;
        out.reserve(n);
        for (std::size_t i : order) out.push_back(d[i]);
        return out;
    }
    throw InvariantViolation("root isolation did not converge");
}

}  // namespace northcott
