#include "northcott/int_poly.hpp"

#include <algorithm>
#include <sstream>

#include "northcott/errors.hpp"

namespace northcott {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t degree) {
    std::vector<mpz_class> v(degree + 1);
    v[degree] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& IntPoly::leading() const {
    if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (g == 1) return *this;
    std::vector<mpz_class> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::canonical() const {
    IntPoly p = primitive_part();
    if (!p.is_zero() && p.leading() < 0) return -p;
    return p;
}

bool IntPoly::is_canonical() const { return !is_zero() && leading() > 0 && content() == 1; }

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<mpz_class> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::reversed() const {
    std::vector<mpz_class> v(coeffs_.rbegin(), coeffs_.rend());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::negated_argument() const {
    std::vector<mpz_class> v = coeffs_;
    for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return IntPoly(std::move(v));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
    // Homogenised Horner keeps everything integral until the final division.
    const mpz_class& p = x.get_num();
    const mpz_class& q = x.get_den();
    if (is_zero()) return 0;
    mpz_class acc = 0;
    mpz_class qpow = 1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * p + *it * qpow;
        qpow *= q;
    }
    // acc = q^deg * f(p/q) after the loop multiplied qpow one extra time.
    mpq_class r(acc, qpow / q);
    r.canonicalize();
    return r;
}

IntPoly IntPoly::operator-() const {
    std::vector<mpz_class> v = coeffs_;
    for (auto& c : v) c = -c;
    return IntPoly(std::move(v));
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& rhs) {
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<mpz_class> v(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            mpz_addmul(v[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
        }
    }
    coeffs_ = std::move(v);
    trim();
    return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPoly& f) { return os << f.to_string(); }

std::strong_ordering canonical_compare(const IntPoly& a, const IntPoly& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (int i = a.degree(); i >= 0; --i) {
        int s = cmp(a.coeffs()[static_cast<std::size_t>(i)], b.coeffs()[static_cast<std::size_t>(i)]);
        if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

IntPoly pow(IntPoly base, unsigned exponent) {
    IntPoly result = IntPoly::constant(1);
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw DomainError("pseudo-remainder by the zero polynomial");
    if (a.degree() < b.degree()) return a;
    std::vector<mpz_class> r = a.coeffs();
    const auto& bc = b.coeffs();
    const mpz_class& lb = b.leading();
    const int db = b.degree();
    int dr = a.degree();
    int steps = a.degree() - db + 1;
    while (dr >= db && dr >= 0) {
        mpz_class lr = r[static_cast<std::size_t>(dr)];
        for (auto& c : r) c *= lb;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= lr * bc[static_cast<std::size_t>(j)];
        --steps;
        --dr;
        while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
    }
    // Pad the missing multiplications so the result is exactly lc^(da-db+1) a mod b.
    if (steps > 0) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
        for (auto& c : r) c *= f;
    }
    return IntPoly(std::move(r));
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<mpz_class> r = a.coeffs();
    const auto& bc = b.coeffs();
    const mpz_class& lb = b.leading();
    const int db = b.degree();
    std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db + 1));
    for (int i = a.degree(); i >= db; --i) {
        mpz_class& top = r[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        q[static_cast<std::size_t>(i - db)] = t;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * bc[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < db; ++i) {
        if (r[static_cast<std::size_t>(i)] != 0) return std::nullopt;
    }
    return IntPoly(std::move(q));
}

bool divides_over_q(const IntPoly& divisor, const IntPoly& dividend) {
    if (divisor.is_zero()) return dividend.is_zero();
    if (divisor.is_constant()) return true;
    return pseudo_remainder(dividend, divisor).is_zero();
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    // Primitive polynomial remainder sequence.
    IntPoly u = a.primitive_part();
    IntPoly v = b.primitive_part();
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPoly r = pseudo_remainder(u, v).primitive_part();
        u = std::move(v);
        v = std::move(r);
    }
    return u.canonical();
}

}  // namespace northcott
