#include "northcott/poly_parse.hpp"

#include <cctype>
#include <string>

#include "northcott/errors.hpp"

namespace northcott {

namespace {

struct Value {
    IntPoly num;
    IntPoly den;
};

class Parser {
  public:
    Parser(std::string_view text, bool allow_division) : text_(text), allow_division_(allow_division) {}

    Value parse() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
        Value v = expr();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static Value add(const Value& a, const Value& b, bool subtract) {
        IntPoly lhs = a.num * b.den;
        IntPoly rhs = b.num * a.den;
        return {subtract ? lhs - rhs : lhs + rhs, a.den * b.den};
    }

    Value expr() {
        Value v = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return v;
            ++pos_;
            v = add(v, term(), c == '-');
        }
    }

    bool starts_primary(char c) const { return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == '('; }

    Value term() {
        Value v = unary();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                Value r = unary();
                v = {v.num * r.num, v.den * r.den};
            } else if (c == '/') {
                if (!allow_division_) fail("division is not allowed in a polynomial");
                ++pos_;
                const std::size_t at = pos_;
                Value r = unary();
                if (r.num.is_zero()) throw ParseError(at, "division by zero");
                v = {v.num * r.den, v.den * r.num};
            } else if (starts_primary(c)) {
                Value r = power();
                v = {v.num * r.num, v.den * r.den};
            } else {
                return v;
            }
        }
    }

    Value unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            Value v = unary();
            return {-v.num, v.den};
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Value power() {
        Value base = primary();
        if (peek() != '^') return base;
        ++pos_;
        skip_space();
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("exponent must be a non-negative integer");
        mpz_class e = integer();
        if (e > 4096) throw ParseError(at, "exponent too large");
        const unsigned n = static_cast<unsigned>(e.get_ui());
        return {pow(base.num, n), pow(base.den, n)};
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
            throw ParseError(pos_, "non-integer coefficient");
        }
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    Value primary() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return {IntPoly::constant(integer()), IntPoly::constant(1)};
        }
        if (c == '.') fail("non-integer coefficient");
        if (c == 'x') {
            ++pos_;
            if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != 'x')
                fail("unknown symbol");
            return {IntPoly::x(), IntPoly::constant(1)};
        }
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (c == '\0') fail("unexpected end of expression");
        if (std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unknown symbol '") + c + "'");
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    bool allow_division_;
    std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_polynomial(std::string_view text) {
    Value v = Parser(text, false).parse();
    // Without '/', every denominator is the constant 1.
    return v.num;
}

RationalFunction reduce_fraction(IntPoly num, IntPoly den) {
    if (den.is_zero()) throw DomainError("zero denominator");
    if (num.is_zero()) return {IntPoly{}, IntPoly::constant(1)};
    IntPoly g = gcd(num, den);
    if (g.degree() > 0) {
        // g is primitive, so by Gauss's lemma both quotients are integral.
        num = divide_exact(num, g).value();
        den = divide_exact(den, g).value();
    }
    mpz_class c;
    mpz_class cn = num.content();
    mpz_class cd = den.content();
    mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (den.leading() < 0) c = -c;
    std::vector<mpz_class> nv = num.coeffs(), dv = den.coeffs();
    for (auto& a : nv) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    for (auto& a : dv) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    return {IntPoly(std::move(nv)), IntPoly(std::move(dv))};
}

RationalFunction parse_rational_function(std::string_view text) {
    Value v = Parser(text, true).parse();
    return reduce_fraction(v.num, v.den);
}

}  // namespace northcott
