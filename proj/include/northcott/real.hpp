#ifndef NORTHCOTT_REAL_HPP
#define NORTHCOTT_REAL_HPP

#include <algorithm>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace northcott {

/*
 * Owning MPFR value. Arithmetic operators round to nearest and are meant
 * for approximation (root finding); certified bounds go through Interval,
 * which rounds every endpoint outward explicitly.
 */
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double d, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), rnd);
    }
    Real(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), rnd);
    }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    /// Exact value (MPFR numbers are dyadic rationals).
    mpq_class to_q() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

    friend Real sqrt(const Real& a) {
        Real r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

  private:
    template <class Op>
    static Real binary(const Real& a, const Real& b, Op op) {
        Real r(std::max(a.prec(), b.prec()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

/// Closed real interval with outward-rounded MPFR endpoints.
class Interval {
  public:
    explicit Interval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}
    Interval(const mpz_class& z, mpfr_prec_t prec) : lo_(z, prec, MPFR_RNDD), hi_(z, prec, MPFR_RNDU) {}
    Interval(const mpq_class& q, mpfr_prec_t prec) : lo_(q, prec, MPFR_RNDD), hi_(q, prec, MPFR_RNDU) {}
    Interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec)
        : lo_(lo, prec, MPFR_RNDD), hi_(hi, prec, MPFR_RNDU) {}
    Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool positive() const { return lo_.sign() > 0; }
    bool negative() const { return hi_.sign() < 0; }

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws DomainError when b contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    /// Enclosure of x^2 (tighter than x*x when x straddles zero).
    friend Interval square(const Interval& a);
    /// Requires a >= 0 on its lower end after clamping at zero.
    friend Interval sqrt(const Interval& a);
    /// Natural logarithm, a must be positive.
    friend Interval log(const Interval& a);
    friend Interval exp(const Interval& a);
    /// max(1, x) taken pointwise.
    friend Interval max_one(const Interval& a);
    friend Interval hull(const Interval& a, const Interval& b);

    /// Multiplication by a non-negative rational.
    Interval scaled(const mpq_class& s) const;

  private:
    Real lo_;
    Real hi_;
};

/// Decimal rendering rounded toward -inf (Down) or +inf (Up).
enum class Rounding { Down, Up };
std::string to_decimal(const mpq_class& q, unsigned digits, Rounding mode);

/// Parses "0.7", "-1.25", "3", "7/10" or "1e-9" into an exact rational.
/// Returns false on malformed input.
bool parse_decimal(const std::string& text, mpq_class& out);

}  // namespace northcott

#endif  // NORTHCOTT_REAL_HPP
