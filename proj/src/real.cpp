#include "northcott/real.hpp"

#include <cctype>

#include "northcott/errors.hpp"

namespace northcott {

namespace {

Real op(mpfr_srcptr a, mpfr_srcptr b, mpfr_prec_t prec, mpfr_rnd_t rnd,
        int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
    Real r(prec);
    fn(r.get(), a, b, rnd);
    return r;
}

const Real& min_of(const Real& a, const Real& b) { return a < b ? a : b; }
const Real& max_of(const Real& a, const Real& b) { return a > b ? a : b; }

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    const auto p = std::max(a.prec(), b.prec());
    return {op(a.lo_.get(), b.lo_.get(), p, MPFR_RNDD, mpfr_add), op(a.hi_.get(), b.hi_.get(), p, MPFR_RNDU, mpfr_add)};
}

Interval operator-(const Interval& a, const Interval& b) {
    const auto p = std::max(a.prec(), b.prec());
    return {op(a.lo_.get(), b.hi_.get(), p, MPFR_RNDD, mpfr_sub), op(a.hi_.get(), b.lo_.get(), p, MPFR_RNDU, mpfr_sub)};
}

Interval Interval::operator-() const {
    Real lo(prec()), hi(prec());
    mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, const Interval& b) {
    const auto p = std::max(a.prec(), b.prec());
    const Real* ends_a[2] = {&a.lo_, &a.hi_};
    const Real* ends_b[2] = {&b.lo_, &b.hi_};
    Real lo(p), hi(p);
    bool first = true;
    for (auto* x : ends_a) {
        for (auto* y : ends_b) {
            Real d = op(x->get(), y->get(), p, MPFR_RNDD, mpfr_mul);
            Real u = op(x->get(), y->get(), p, MPFR_RNDU, mpfr_mul);
            if (first || d < lo) lo = std::move(d);
            if (first || u > hi) hi = std::move(u);
            first = false;
        }
    }
    return {std::move(lo), std::move(hi)};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
    const auto p = std::max(a.prec(), b.prec());
    const Real* ends_a[2] = {&a.lo_, &a.hi_};
    const Real* ends_b[2] = {&b.lo_, &b.hi_};
    Real lo(p), hi(p);
    bool first = true;
    for (auto* x : ends_a) {
        for (auto* y : ends_b) {
            Real d = op(x->get(), y->get(), p, MPFR_RNDD, mpfr_div);
            Real u = op(x->get(), y->get(), p, MPFR_RNDU, mpfr_div);
            if (first || d < lo) lo = std::move(d);
            if (first || u > hi) hi = std::move(u);
            first = false;
        }
    }
    return {std::move(lo), std::move(hi)};
}

Interval square(const Interval& a) {
    const auto p = a.prec();
    Real lo_abs(p), hi_abs(p);
    if (a.contains_zero()) {
        Real m(p);
        mpfr_set_zero(m.get(), 1);
        Real x(p);
        mpfr_abs(x.get(), a.lo_.get(), MPFR_RNDU);
        Real y(p);
        mpfr_abs(y.get(), a.hi_.get(), MPFR_RNDU);
        const Real& big = max_of(x, y);
        Real hi(p);
        mpfr_sqr(hi.get(), big.get(), MPFR_RNDU);
        return {std::move(m), std::move(hi)};
    }
    // Same sign: the endpoint closer to zero gives the minimum.
    Real x(p), y(p);
    mpfr_abs(x.get(), a.lo_.get(), MPFR_RNDN);
    mpfr_abs(y.get(), a.hi_.get(), MPFR_RNDN);
    const Real& small = min_of(x, y);
    const Real& big = max_of(x, y);
    Real lo(p), hi(p);
    mpfr_sqr(lo.get(), small.get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), big.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval sqrt(const Interval& a) {
    if (a.hi_.sign() < 0) throw DomainError("square root of a negative interval");
    const auto p = a.prec();
    Real lo(p), hi(p);
    if (a.lo_.sign() <= 0) {
        mpfr_set_zero(lo.get(), 1);
    } else {
        mpfr_sqrt(lo.get(), a.lo_.get(), MPFR_RNDD);
    }
    mpfr_sqrt(hi.get(), a.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval log(const Interval& a) {
    if (!a.positive()) throw DomainError("logarithm of a non-positive interval");
    const auto p = a.prec();
    Real lo(p), hi(p);
    mpfr_log(lo.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_log(hi.get(), a.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval exp(const Interval& a) {
    const auto p = a.prec();
    Real lo(p), hi(p);
    mpfr_exp(lo.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), a.hi_.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval max_one(const Interval& a) {
    const auto p = a.prec();
    Real one(1.0, p);
    Real lo = a.lo_ < one ? one : a.lo_;
    Real hi = a.hi_ < one ? one : a.hi_;
    return {std::move(lo), std::move(hi)};
}

Interval hull(const Interval& a, const Interval& b) {
    return {a.lo_ < b.lo_ ? a.lo_ : b.lo_, a.hi_ > b.hi_ ? a.hi_ : b.hi_};
}

Interval Interval::scaled(const mpq_class& s) const {
    if (s < 0) throw DomainError("negative interval scale");
    Real lo(prec()), hi(prec());
    mpfr_mul_q(lo.get(), lo_.get(), s.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), hi_.get(), s.get_mpq_t(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

std::string to_decimal(const mpq_class& q, unsigned digits, Rounding mode) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class num = q.get_num() * scale;
    mpz_class n;
    if (mode == Rounding::Down) {
        mpz_fdiv_q(n.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    } else {
        mpz_cdiv_q(n.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    }
    const bool negative = n < 0;
    std::string s = mpz_class(abs(n)).get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    if (negative) s.insert(0, "-");
    return s;
}

bool parse_decimal(const std::string& text, mpq_class& out) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    std::string digits;
    std::size_t frac = 0;
    bool seen_point = false;
    bool any = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any = true;
            if (seen_point) ++frac;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c == '/' && !seen_point && any) {
            // p/q form
            mpq_class num(mpz_class(digits, 10));
            std::string rest = text.substr(i + 1);
            if (rest.empty()) return false;
            for (char d : rest)
                if (!std::isdigit(static_cast<unsigned char>(d))) return false;
            mpz_class den(rest, 10);
            if (den == 0) return false;
            out = mpq_class(mpz_class(digits, 10), den);
            out.canonicalize();
            if (negative) out = -out;
            return true;
        } else if ((c == 'e' || c == 'E') && any) {
            break;
        } else {
            return false;
        }
    }
    if (!any) return false;
    long exp10 = -static_cast<long>(frac);
    if (i < text.size()) {
        std::size_t j = i + 1;
        bool eneg = false;
        if (j < text.size() && (text[j] == '-' || text[j] == '+')) eneg = text[j++] == '-';
        if (j == text.size() || text.size() - j > 6) return false;
        long e = 0;
        for (; j < text.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
            e = e * 10 + (text[j] - '0');
        }
        exp10 += eneg ? -e : e;
    }
    mpz_class num(digits, 10), den = 1;
    if (exp10 < 0) mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
    else {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
        num *= scale;
    }
    out = mpq_class(num, den);
    out.canonicalize();
    if (negative) out = -out;
    return true;
}

}  // namespace northcott
