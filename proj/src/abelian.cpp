#include "northcott/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

#include "northcott/errors.hpp"

namespace northcott {

namespace {

using CharSet = std::set<Character>;

mpz_class pow_ui(const mpz_class& b, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Character multiply(const Character& a, const Character& b, const std::vector<UnitComponent>& comps) {
    Character r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = mod_pos(a[j] + b[j], comps[j].order);
    return r;
}

Character trivial(const std::vector<UnitComponent>& comps) { return Character(comps.size(), mpz_class(0)); }

// <H, chi> = union of chi^k H.
CharSet adjoin(const CharSet& h, const Character& chi, const std::vector<UnitComponent>& comps) {
    CharSet out = h;
    Character cur = chi;
    while (!out.count(cur)) {
        for (const auto& x : h) out.insert(multiply(x, cur, comps));
        cur = multiply(cur, chi, comps);
    }
    return out;
}

CharSet closure(const std::vector<Character>& gens, const std::vector<UnitComponent>& comps) {
    CharSet h{trivial(comps)};
    for (const auto& g : gens) h = adjoin(h, g, comps);
    return h;
}

PrimePowers merge_lcm(const PrimePowers& a, const PrimePowers& b) {
    std::map<mpz_class, unsigned> m;
    for (const auto& [p, e] : a) m[p] = std::max(m[p], e);
    for (const auto& [p, e] : b) m[p] = std::max(m[p], e);
    PrimePowers out;
    for (const auto& [p, e] : m) {
        if (e > 0) out.emplace_back(p, e);
    }
    return out;
}

mpz_class product(const PrimePowers& f) {
    mpz_class m = 1;
    for (const auto& [p, e] : f) m *= pow_ui(p, e);
    return m;
}

const UnitComponent* find_component(const std::vector<UnitComponent>& comps, const UnitComponent& like) {
    for (const auto& c : comps) {
        if (c.prime == like.prime && c.kind == like.kind) return &c;
    }
    return nullptr;
}

// Re-expresses chi (on `from`) on the unit group described by `to`.
Character rebase(const Character& chi, const std::vector<UnitComponent>& from, const std::vector<UnitComponent>& to) {
    Character out(to.size());
    for (std::size_t j = 0; j < to.size(); ++j) {
        const UnitComponent* src = find_component(from, to[j]);
        if (!src) continue;
        const mpz_class& a = chi[static_cast<std::size_t>(src - from.data())];
        if (to[j].order >= src->order) {
            out[j] = a * (to[j].order / src->order);
        } else {
            mpz_class ratio = src->order / to[j].order;
            if (!mpz_divisible_p(a.get_mpz_t(), ratio.get_mpz_t()))
                throw InvariantViolation("character does not factor through the smaller modulus");
            out[j] = a / ratio;
        }
    }
    for (std::size_t j = 0; j < from.size(); ++j) {
        if (chi[j] != 0 && !find_component(to, from[j]))
            throw InvariantViolation("character does not factor through the smaller modulus");
    }
    return out;
}

mpz_class component_conductor(const UnitComponent& c, const mpz_class& a) {
    if (a == 0) return 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.order.get_mpz_t());
    const mpz_class ord = c.order / g;
    switch (c.kind) {
        case UnitComponent::Kind::OddPrimePower:
            return pow_ui(c.prime, valuation(ord, c.prime) + 1);
        case UnitComponent::Kind::TwoSign:
            return 4;
        case UnitComponent::Kind::TwoPower:
            return pow_ui(2, valuation(ord, 2) + 2);
    }
    return 1;
}

}  // namespace

std::vector<UnitComponent> unit_components(const PrimePowers& modulus_factors) {
    std::vector<UnitComponent> out;
    for (const auto& [p, k] : modulus_factors) {
        if (k == 0) continue;
        if (p == 2) {
            if (k >= 2) out.push_back({UnitComponent::Kind::TwoSign, 2, k, 2});
            if (k >= 3) out.push_back({UnitComponent::Kind::TwoPower, 2, k, pow_ui(2, k - 2)});
        } else {
            out.push_back({UnitComponent::Kind::OddPrimePower, p, k, pow_ui(p, k - 1) * (p - 1)});
        }
    }
    return out;
}

AbelianField::AbelianField() { characters_.push_back(Character{}); }

AbelianField AbelianField::from_generators(const PrimePowers& modulus_factors, const std::vector<Character>& gens) {
    AbelianField f;
    f.factors_.clear();
    for (const auto& [p, e] : modulus_factors) {
        if (e > 0) f.factors_.emplace_back(p, e);
    }
    std::sort(f.factors_.begin(), f.factors_.end());
    f.modulus_ = product(f.factors_);
    f.components_ = unit_components(f.factors_);
    for (const auto& g : gens) {
        if (g.size() != f.components_.size()) throw DomainError("character has the wrong number of exponents");
    }
    std::vector<Character> reduced;
    for (const auto& g : gens) {
        Character r(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) r[j] = mod_pos(g[j], f.components_[j].order);
        reduced.push_back(std::move(r));
    }
    CharSet h = closure(reduced, f.components_);
    f.characters_.assign(h.begin(), h.end());
    f.canonicalize();
    return f;
}

void AbelianField::canonicalize() {
    // Shrink the modulus to the conductor of the field.
    std::map<mpz_class, unsigned> cond;
    for (const auto& chi : characters_) {
        for (const auto& [p, e] : factorize_conductor(chi)) cond[p] = std::max(cond[p], e);
    }
    PrimePowers target(cond.begin(), cond.end());
    std::vector<UnitComponent> comps = unit_components(target);
    std::vector<Character> rebased;
    for (const auto& chi : characters_) rebased.push_back(rebase(chi, components_, comps));
    std::sort(rebased.begin(), rebased.end());
    factors_ = std::move(target);
    modulus_ = product(factors_);
    components_ = std::move(comps);
    characters_ = std::move(rebased);

    // |v_p(Delta)| <= 2 [H:Q]^2 for every prime.
    const mpz_class bound = mpz_class(2) * degree() * degree();
    for (const auto& [p, e] : discriminant_factors()) {
        if (mpz_class(e) > bound) throw InvariantViolation("discriminant exceeds the prime-power bound at " + p.get_str());
    }
}

PrimePowers AbelianField::factorize_conductor(const Character& chi) const {
    std::map<mpz_class, unsigned> out;
    for (std::size_t j = 0; j < components_.size(); ++j) {
        mpz_class c = component_conductor(components_[j], chi[j]);
        if (c == 1) continue;
        unsigned e = valuation(c, components_[j].prime);
        out[components_[j].prime] = std::max(out[components_[j].prime], e);
    }
    return PrimePowers(out.begin(), out.end());
}

mpz_class AbelianField::conductor_of(const Character& chi) const { return product(factorize_conductor(chi)); }

PrimePowers AbelianField::discriminant_factors() const {
    std::map<mpz_class, unsigned> out;
    for (const auto& chi : characters_) {
        for (const auto& [p, e] : factorize_conductor(chi)) out[p] += e;
    }
    return PrimePowers(out.begin(), out.end());
}

mpz_class AbelianField::discriminant() const { return product(discriminant_factors()); }

std::optional<mpz_class> AbelianField::max_ramified_prime() const {
    PrimePowers f = discriminant_factors();
    if (f.empty()) return std::nullopt;
    return f.back().first;
}

mpz_class AbelianField::local_degree(const mpz_class& q) const {
    auto [e, f] = local_ef(q);
    return e * f;
}

std::pair<mpz_class, mpz_class> AbelianField::local_ef(const mpz_class& q) const {
    if (!is_prime(q)) throw DomainError("local degree needs a prime");
    std::vector<const Character*> unramified;
    for (const auto& chi : characters_) {
        if (!mpz_divisible_p(conductor_of(chi).get_mpz_t(), q.get_mpz_t())) unramified.push_back(&chi);
    }
    const mpz_class e = mpz_class(characters_.size()) / mpz_class(unramified.size());

    // Discrete logs of q in the components the unramified characters use.
    std::vector<std::optional<mpz_class>> logs(components_.size());
    auto log_of_q = [&](std::size_t j) -> const mpz_class& {
        if (logs[j]) return *logs[j];
        const UnitComponent& c = components_[j];
        mpz_class m = pow_ui(c.prime, c.exponent);
        mpz_class x;
        if (c.kind == UnitComponent::Kind::TwoSign) {
            x = mod_pos(q, 4) == 3 ? 1 : 0;
        } else if (c.kind == UnitComponent::Kind::TwoPower) {
            mpz_class v = mod_pos(q, 4) == 3 ? mod_pos(-q, m) : mod_pos(q, m);
            x = discrete_log(5, v, m, c.order, {{mpz_class(2), c.exponent - 2}});
        } else {
            PrimePowers of = factorize(c.prime - 1);
            if (c.exponent > 1) {
                of.emplace_back(c.prime, c.exponent - 1);
                std::sort(of.begin(), of.end());
            }
            x = discrete_log(primitive_root_prime_power(c.prime), mod_pos(q, m), m, c.order, of);
        }
        logs[j] = x;
        return *logs[j];
    };

    mpz_class f = 1;
    for (const Character* chi : unramified) {
        mpq_class angle = 0;
        for (std::size_t j = 0; j < components_.size(); ++j) {
            if ((*chi)[j] == 0) continue;
            angle += mpq_class((*chi)[j] * log_of_q(j), components_[j].order);
        }
        angle.canonicalize();
        f = lcm(f, angle.get_den());
    }
    return {e, f};
}

bool AbelianField::contains(const AbelianField& sub) const {
    for (const auto& [p, e] : sub.factors_) {
        auto it = std::find_if(factors_.begin(), factors_.end(), [&](const auto& pe) { return pe.first == p; });
        if (it == factors_.end() || it->second < e) return false;
    }
    for (const auto& chi : sub.characters_at(factors_)) {
        if (!std::binary_search(characters_.begin(), characters_.end(), chi)) return false;
    }
    return true;
}

std::vector<Character> AbelianField::characters_at(const PrimePowers& target) const {
    std::vector<UnitComponent> comps = unit_components(target);
    std::vector<Character> out;
    for (const auto& chi : characters_) out.push_back(rebase(chi, components_, comps));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Character> AbelianField::generators() const {
    std::vector<Character> gens;
    CharSet h{trivial(components_)};
    for (const auto& chi : characters_) {
        if (h.count(chi)) continue;
        gens.push_back(chi);
        h = adjoin(h, chi, components_);
    }
    return gens;
}

std::string AbelianField::to_string() const {
    std::ostringstream os;
    os << "modulus " << modulus_ << ", degree " << degree() << ", generators [";
    bool first = true;
    for (const auto& g : generators()) {
        os << (first ? "" : ", ") << "(";
        for (std::size_t j = 0; j < g.size(); ++j) os << (j ? "," : "") << g[j];
        os << ")";
        first = false;
    }
    os << "]";
    return os.str();
}

std::strong_ordering operator<=>(const AbelianField& a, const AbelianField& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (int s = cmp(a.modulus_, b.modulus_); s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.characters_ < b.characters_) return std::strong_ordering::less;
    if (b.characters_ < a.characters_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

AbelianField quadratic_field(const mpz_class& D) {
    if (D == 0) throw DomainError("quadratic field of 0");
    if (D > 0 && mpz_perfect_square_p(D.get_mpz_t())) throw DomainError("D is a perfect square");
    // Squarefree part, then the fundamental discriminant.
    mpz_class sf = D < 0 ? -1 : 1;
    for (const auto& [p, e] : factorize(D)) {
        if (e % 2 == 1) sf *= p;
    }
    if (sf == 1) throw DomainError("D is a perfect square");
    const mpz_class d = mod_pos(sf, 4) == 1 ? sf : 4 * sf;

    PrimePowers mod;
    for (const auto& [p, e] : factorize(d)) mod.emplace_back(p, e);
    std::vector<UnitComponent> comps = unit_components(mod);
    Character chi(comps.size());
    int parity = d < 0 ? -1 : 1;  // chi(-1) = sign(d)
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (comps[j].kind != UnitComponent::Kind::OddPrimePower) continue;
        chi[j] = comps[j].order / 2;
        if (mod_pos(comps[j].prime, 4) == 3) parity = -parity;
    }
    // The 2-part carries whatever sign the odd part leaves over.
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (comps[j].kind == UnitComponent::Kind::TwoSign) chi[j] = parity < 0 ? 1 : 0;
        if (comps[j].kind == UnitComponent::Kind::TwoPower) chi[j] = comps[j].order / 2;
    }
    return AbelianField::from_generators(mod, {chi});
}

AbelianField cyclic_subfield_of_cyclotomic(const mpz_class& p, const mpz_class& n) {
    if (p == 2 || !is_prime(p)) throw DomainError("p must be an odd prime");
    if (n < 2 || !mpz_divisible_p(mpz_class(p - 1).get_mpz_t(), n.get_mpz_t())) throw DomainError("n must divide p - 1 and be at least 2");
    PrimePowers mod{{p, 1}};
    return AbelianField::from_generators(mod, {Character{(p - 1) / n}});
}

AbelianField cyclotomic_field(const mpz_class& n) {
    if (n < 1) throw DomainError("cyclotomic field needs n >= 1");
    PrimePowers mod = factorize(n);
    std::vector<UnitComponent> comps = unit_components(mod);
    std::vector<Character> gens;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        Character g(comps.size());
        g[j] = 1;
        gens.push_back(std::move(g));
    }
    return AbelianField::from_generators(mod, gens);
}

AbelianField compositum(const AbelianField& a, const AbelianField& b) {
    PrimePowers m = merge_lcm(a.modulus_factors(), b.modulus_factors());
    std::vector<Character> gens = a.characters_at(m);
    for (auto& chi : b.characters_at(m)) gens.push_back(std::move(chi));
    return AbelianField::from_generators(m, gens);
}

AbelianField intersection(const AbelianField& a, const AbelianField& b) {
    PrimePowers m = merge_lcm(a.modulus_factors(), b.modulus_factors());
    std::vector<Character> xa = a.characters_at(m);
    std::vector<Character> xb = b.characters_at(m);
    std::vector<Character> common;
    std::set_intersection(xa.begin(), xa.end(), xb.begin(), xb.end(), std::back_inserter(common));
    return AbelianField::from_generators(m, common);
}

std::vector<AbelianField> intermediate_fields(const AbelianField& lower, const AbelianField& upper) {
    if (!upper.contains(lower)) throw DomainError("lower field is not a subfield of the upper field");
    const auto& comps = upper.components();
    std::vector<Character> base = lower.characters_at(upper.modulus_factors());
    CharSet start(base.begin(), base.end());
    std::set<CharSet> seen{start};
    std::deque<CharSet> queue{start};
    while (!queue.empty()) {
        CharSet h = std::move(queue.front());
        queue.pop_front();
        for (const auto& chi : upper.characters()) {
            if (h.count(chi)) continue;
            CharSet bigger = adjoin(h, chi, comps);
            if (seen.insert(bigger).second) queue.push_back(std::move(bigger));
        }
    }
    std::vector<AbelianField> out;
    for (const auto& h : seen) {
        out.push_back(AbelianField::from_generators(upper.modulus_factors(), std::vector<Character>(h.begin(), h.end())));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<AbelianField> subfield_lattice(const AbelianField& f) { return intermediate_fields(AbelianField(), f); }

mpz_class relative_discriminant_norm(const AbelianField& L, const AbelianField& M) {
    if (!M.contains(L)) throw DomainError("relative discriminant needs a subfield");
    const unsigned long rel = M.degree() / L.degree();
    mpz_class denom = pow_ui(L.discriminant(), static_cast<unsigned>(rel));
    const mpz_class dm = M.discriminant();
    if (!mpz_divisible_p(dm.get_mpz_t(), denom.get_mpz_t())) throw InvariantViolation("inexact relative discriminant");
    return dm / denom;
}

}  // namespace northcott

namespace northcott {

namespace {

class FieldParser {
  public:
    explicit FieldParser(std::string_view text) : text_(text) {}

    AbelianField parse() {
        AbelianField f = term();
        skip();
        while (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            f = compositum(f, term());
            skip();
        }
        if (pos_ != text_.size()) throw ParseError(pos_, "unexpected character");
        return f;
    }

  private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    mpz_class integer() {
        skip();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) throw ParseError(digits, "expected an integer");
        std::string s(text_.substr(start, pos_ - start));
        if (s[0] == '+') s.erase(0, 1);
        return mpz_class(s);
    }

    AbelianField term() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "Q") return AbelianField();
        if (name == "sqrt") {
            expect('(');
            mpz_class d = integer();
            expect(')');
            return quadratic_field(d);
        }
        if (name == "zeta") {
            expect('(');
            mpz_class n = integer();
            expect(')');
            return cyclotomic_field(n);
        }
        if (name == "cyclic") {
            expect('(');
            mpz_class p = integer();
            expect(',');
            mpz_class n = integer();
            expect(')');
            return cyclic_subfield_of_cyclotomic(p, n);
        }
        throw ParseError(start, name.empty() ? "expected a field" : "unknown field constructor " + name);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

AbelianField parse_field(std::string_view text) { return FieldParser(text).parse(); }

}  // namespace northcott
