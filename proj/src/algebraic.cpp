#include "northcott/algebraic.hpp"

#include <functional>
#include <optional>

#include "northcott/cyclotomic.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/real.hpp"
#include "northcott/resultant.hpp"

namespace northcott {

namespace {

struct CBox {
    Interval re;
    Interval im;
};

CBox box_of(const Disk& d, mpfr_prec_t prec) { return {d.real_part(prec), d.imag_part(prec)}; }

CBox mul(const CBox& a, const CBox& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

std::optional<CBox> div(const CBox& a, const CBox& b) {
    Interval den = square(b.re) + square(b.im);
    if (den.contains_zero()) return std::nullopt;
    return CBox{(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

CBox eval_box(const IntPoly& p, const CBox& z, mpfr_prec_t prec) {
    if (p.is_zero()) return {Interval(mpz_class(0), prec), Interval(mpz_class(0), prec)};
    const auto& c = p.coeffs();
    CBox acc{Interval(c.back(), prec), Interval(mpz_class(0), prec)};
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        acc = mul(acc, z);
        acc.re = acc.re + Interval(c[k], prec);
    }
    return acc;
}

mpfr_prec_t prec_for(const mpq_class& tol) {
    long bits = static_cast<long>(mpz_sizeinbase(tol.get_den_mpz_t(), 2)) -
                static_cast<long>(mpz_sizeinbase(tol.get_num_mpz_t(), 2));
    return static_cast<mpfr_prec_t>(std::max(64L, bits + 64));
}

mpq_class pow2(long e) {
    mpq_class r(1);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-e));
    }
    return r;
}

/*
 * Picks the unique root among candidate irreducible polynomials whose disk
 * meets the enclosure, tightening both sides until exactly one matches.
 */
AlgebraicNumber select_root(const std::vector<IntPoly>& candidates,
                            const std::function<std::optional<CBox>(const mpq_class&, mpfr_prec_t)>& enclose) {
    mpq_class tol = pow2(-20);
    for (int round = 0; round < 40; ++round, tol *= pow2(-12)) {
        const mpfr_prec_t prec = prec_for(tol);
        std::optional<CBox> box = enclose(tol, prec);
        if (!box) continue;
        std::optional<AlgebraicNumber> found;
        int matches = 0;
        for (const IntPoly& f : candidates) {
            std::vector<Disk> disks = isolate_roots(f, tol);
            for (std::size_t k = 0; k < disks.size(); ++k) {
                if (!disks[k].intersects_box(box->re, box->im)) continue;
                if (++matches == 1) found = AlgebraicNumber::trusted(f, k, disks[k]);
            }
        }
        if (matches == 1) return *found;
        if (matches == 0) throw InvariantViolation("no candidate root meets the value enclosure");
    }
    throw InvariantViolation("root selection did not separate the candidates");
}

// Res_y(m(y), x*Q(y) - P(y)) as a polynomial in x, by interpolation at
// x = 0..n. The product formula lc(m)^D prod (x Q(b) - P(b)) over roots b
// of m fixes the normalisation at points where x*Q - P drops degree.
IntPoly eliminate(const IntPoly& m, const IntPoly& p, const IntPoly& q) {
    const int n = m.degree();
    const int formal = std::max(p.degree(), q.degree());
    std::vector<mpq_class> xs, ys;
    for (int k = 0; k <= n; ++k) {
        IntPoly h = q * mpz_class(k) - p;
        mpz_class v = 0;
        if (!h.is_zero()) {
            v = resultant(m, h);
            mpz_class lcp;
            mpz_pow_ui(lcp.get_mpz_t(), m.leading().get_mpz_t(), static_cast<unsigned long>(formal - h.degree()));
            v *= lcp;
        }
        xs.emplace_back(k);
        ys.emplace_back(v);
    }
    // Newton divided differences, then expansion to monomial form.
    std::vector<mpq_class> dd = ys;
    for (int j = 1; j <= n; ++j) {
        for (int i = n; i >= j; --i) {
            dd[static_cast<std::size_t>(i)] = (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) /
                                              (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - j)]);
        }
    }
    std::vector<mpq_class> coeffs(static_cast<std::size_t>(n) + 1);
    for (int i = n; i >= 0; --i) {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        for (int k = n; k >= 1; --k) {
            coeffs[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k - 1)] -
                                                  coeffs[static_cast<std::size_t>(k)] * xs[static_cast<std::size_t>(i)];
        }
        coeffs[0] = -coeffs[0] * xs[static_cast<std::size_t>(i)] + dd[static_cast<std::size_t>(i)];
    }
    std::vector<mpz_class> out;
    for (auto& c : coeffs) {
        if (c.get_den() != 1) throw InvariantViolation("non-integral elimination polynomial");
        out.push_back(c.get_num());
    }
    return IntPoly(std::move(out));
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, std::size_t root_index)
    : minpoly_(std::move(minpoly)), index_(root_index) {
    if (!minpoly_.is_canonical()) throw DomainError("minimal polynomial must be primitive with positive leading coefficient");
    if (!is_irreducible(minpoly_)) throw DomainError("minimal polynomial must be irreducible");
    if (index_ >= static_cast<std::size_t>(minpoly_.degree())) throw DomainError("root index out of range");
    disk_ = isolate_roots(minpoly_, default_isolation_tol(minpoly_))[index_];
}

AlgebraicNumber AlgebraicNumber::rational(const mpq_class& q) {
    IntPoly f({-q.get_num(), q.get_den()});
    return AlgebraicNumber(std::move(f), 0, Disk{q, 0, 0});
}

AlgebraicNumber AlgebraicNumber::trusted(IntPoly minpoly, std::size_t root_index, Disk disk) {
    return AlgebraicNumber(std::move(minpoly), root_index, std::move(disk));
}

Disk AlgebraicNumber::disk_at(const mpq_class& tol) const {
    if (disk_.radius <= tol) return disk_;
    return isolate_roots(minpoly_, tol)[index_];
}

AlgebraicNumber AlgebraicNumber::refined(const mpq_class& tol) const {
    return AlgebraicNumber(minpoly_, index_, disk_at(tol));
}

mpq_class AlgebraicNumber::rational_value() const {
    if (!is_rational()) throw DomainError("not a rational number");
    mpq_class q(-minpoly_[0], minpoly_[1]);
    q.canonicalize();
    return q;
}

bool AlgebraicNumber::is_torsion() const {
    if (is_rational()) {
        mpq_class q = rational_value();
        return q == 0 || q == 1 || q == -1;
    }
    return cyclotomic_index(minpoly_).has_value();
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (minpoly_[0] == 0) throw DomainError("inverse of zero");
    if (is_rational()) return rational(1 / rational_value());
    const AlgebraicNumber& self = *this;
    return select_root({minpoly_.reversed().canonical()},
                       [&](const mpq_class& tol, mpfr_prec_t prec) -> std::optional<CBox> {
                           CBox one{Interval(mpz_class(1), prec), Interval(mpz_class(0), prec)};
                           return div(one, box_of(self.disk_at(tol), prec));
                       });
}

std::string AlgebraicNumber::to_string() const {
    if (is_rational()) return rational_value().get_str();
    return minpoly_.to_string() + "[" + std::to_string(index_) + "]";
}

AlgebraicNumber algebraic_eval(const RationalFunction& g, const AlgebraicNumber& a) {
    if (g.den.is_zero()) throw DomainError("rational function with zero denominator");
    if (divides_over_q(a.minpoly(), g.den)) throw PoleError("evaluation at a pole: " + a.to_string());
    if (a.is_rational()) {
        mpq_class x = a.rational_value();
        return AlgebraicNumber::rational(g.num.eval(x) / g.den.eval(x));
    }
    IntPoly r = eliminate(a.minpoly(), g.num, g.den);
    std::vector<IntPoly> candidates;
    for (const auto& f : factor(r).factors) candidates.push_back(f.poly);
    return select_root(candidates, [&](const mpq_class& tol, mpfr_prec_t prec) -> std::optional<CBox> {
        CBox z = box_of(a.disk_at(tol), prec);
        return div(eval_box(g.num, z, prec), eval_box(g.den, z, prec));
    });
}

AlgebraicNumber algebraic_eval(const IntPoly& g, const AlgebraicNumber& a) {
    return algebraic_eval(RationalFunction{g, IntPoly::constant(1)}, a);
}

AlgebraicNumber parse_algebraic(const std::string& text) {
    auto open = text.rfind('[');
    if (open == std::string::npos) {
        mpq_class q;
        if (!parse_decimal(text, q)) throw ParseError(0, "expected a rational or 'minpoly[index]'");
        return AlgebraicNumber::rational(q);
    }
    auto close = text.find(']', open);
    if (close == std::string::npos || close + 1 != text.size() || close == open + 1)
        throw ParseError(open, "malformed root index");
    std::size_t index = 0;
    for (std::size_t i = open + 1; i < close; ++i) {
        if (text[i] < '0' || text[i] > '9') throw ParseError(i, "root index must be a non-negative integer");
        index = index * 10 + static_cast<std::size_t>(text[i] - '0');
        if (index > 100000) throw ParseError(i, "root index too large");
    }
    IntPoly f = parse_polynomial(std::string_view(text).substr(0, open));
    if (f.degree() < 1) throw DomainError("minimal polynomial must be non-constant");
    return AlgebraicNumber(f.canonical(), index);
}

}  // namespace northcott
