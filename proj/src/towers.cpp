#include "northcott/towers.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "northcott/errors.hpp"
#include "northcott/real.hpp"

namespace northcott {

namespace {

constexpr mpfr_prec_t kQuantityPrec = 256;

mpz_class pow_ui(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

HeightInterval root_enclosure(const mpz_class& n, const mpz_class& e) {
    if (n == 1) return {1, 1};
    Interval v = exp(log(Interval(n, kQuantityPrec)).scaled(mpq_class(1, e)));
    return {v.lo().to_q(), v.hi().to_q()};
}

// a^(1/ea) < b^(1/eb), exactly.
bool quantity_less(const StepReport& a, const StepReport& b) {
    if (a.quantity.hi < b.quantity.lo) return true;
    if (b.quantity.hi < a.quantity.lo) return false;
    return pow_ui(a.norm, b.exponent.get_ui()) < pow_ui(b.norm, a.exponent.get_ui());
}

}  // namespace

unsigned long GroupSpec::order() const {
    unsigned long n = 1;
    for (unsigned long f : factors) n *= f;
    return n;
}

unsigned long GroupSpec::exponent() const {
    unsigned long n = 1;
    for (unsigned long f : factors) n = std::lcm(n, f);
    return n;
}

std::string GroupSpec::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "x" : "") + std::to_string(factors[i]);
    return out;
}

GroupSpec parse_group(const std::string& text) {
    static const std::set<std::string> named{"S", "D", "Q", "A", "DIC", "SL", "GL", "PSL", "HEIS"};
    std::string t;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (t.empty()) throw ParseError(0, "empty group");
    GroupSpec g;
    std::size_t pos = 0;
    while (pos <= t.size()) {
        const std::size_t start = pos;
        if (pos < t.size() && t[pos] == 'C') ++pos;
        if (pos < t.size() && std::isalpha(static_cast<unsigned char>(t[pos]))) {
            std::size_t end = pos;
            while (end < t.size() && std::isalpha(static_cast<unsigned char>(t[end]))) ++end;
            std::string name = t.substr(start, end - start);
            if (named.count(name)) throw Unsupported("non-abelian group " + text + ": only products of cyclic groups are realized");
            throw ParseError(start, "unknown group name " + name);
        }
        std::size_t end = pos;
        while (end < t.size() && std::isdigit(static_cast<unsigned char>(t[end]))) ++end;
        if (end == pos) throw ParseError(pos, "expected a cyclic order");
        if (end - pos > 9) throw ParseError(pos, "cyclic order too large");
        unsigned long n = std::stoul(t.substr(pos, end - pos));
        if (n < 2) throw ParseError(pos, "cyclic orders must be at least 2");
        g.factors.push_back(n);
        pos = end;
        if (pos == t.size()) break;
        if (t[pos] != 'X' && t[pos] != '*') throw ParseError(pos, "expected 'x' between factors");
        ++pos;
    }
    return g;
}

std::vector<GroupSpec> parse_groups(const std::string& text) {
    std::vector<GroupSpec> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            out.push_back(parse_group(part));
        } catch (const ParseError& e) {
            throw ParseError(start + e.position(), e.detail());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

bool TowerReport::ok() const {
    return std::all_of(steps.begin(), steps.end(), [](const StepReport& s) { return s.ok(); });
}

mpz_class largest_ramified_prime(const AbelianField& f) { return f.max_ramified_prime().value_or(mpz_class(1)); }

StepReport step_quantity(const AbelianField& L_prev, const AbelianField& L_cur) {
    if (L_prev == L_cur || !L_cur.contains(L_prev)) throw DomainError("tower step needs a strict inclusion");
    std::vector<StepReport> candidates;
    for (const auto& m : intermediate_fields(L_prev, L_cur)) {
        if (m == L_prev) continue;
        StepReport r;
        r.witness = m;
        r.norm = relative_discriminant_norm(L_prev, m);
        r.exponent = mpz_class(m.degree()) * mpz_class(m.degree() / L_prev.degree());
        r.quantity = root_enclosure(r.norm, r.exponent);
        candidates.push_back(std::move(r));
    }
    // intermediate_fields is sorted by degree then canonical order, so the
    // first minimal candidate already satisfies the tie rule.
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (quantity_less(candidates[i], candidates[best])) best = i;
    }
    StepReport out = std::move(candidates[best]);
    out.p_prev = largest_ramified_prime(L_prev);
    out.exceeds_prev = out.quantity.lo > out.p_prev;
    return out;
}

namespace {

TowerSpec assemble(const std::vector<GroupSpec>& groups, const std::vector<std::vector<mpz_class>>& primes) {
    TowerSpec t;
    t.groups = groups;
    t.primes = primes;
    t.K.emplace_back();
    t.L.emplace_back();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        AbelianField k;
        for (std::size_t j = 0; j < groups[i].factors.size(); ++j) {
            k = compositum(k, cyclic_subfield_of_cyclotomic(primes[i][j], groups[i].factors[j]));
        }
        t.L.push_back(compositum(t.L.back(), k));
        t.K.push_back(std::move(k));
    }
    return t;
}

}  // namespace

TowerSpec build_tower(const std::vector<GroupSpec>& groups, const mpz_class& start_hint) {
    if (groups.empty()) throw DomainError("a tower needs at least one step");
    std::vector<std::vector<mpz_class>> primes;
    mpz_class p_prev = 1;  // p_{K_0} for K_0 = Q
    for (const auto& g : groups) {
        if (g.order() < 2) throw DomainError("each group needs order at least 2");
        const mpz_class bound = pow_ui(p_prev, g.order() * g.order());
        mpz_class above = std::max<mpz_class>(bound, start_hint - 1);
        std::vector<mpz_class> step;
        for (std::size_t j = 0; j < g.factors.size(); ++j) {
            above = next_prime_one_mod(above, g.exponent());
            step.push_back(above);
        }
        p_prev = step.back();
        primes.push_back(std::move(step));
    }
    return assemble(groups, primes);
}

TowerSpec tower_from_primes(const std::vector<GroupSpec>& groups, const std::vector<std::vector<mpz_class>>& primes) {
    if (groups.empty()) throw DomainError("a tower needs at least one step");
    if (groups.size() != primes.size()) throw DomainError("one prime list per step is required");
    std::set<mpz_class> used;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (primes[i].size() != groups[i].factors.size()) throw DomainError("one prime per cyclic factor is required");
        for (const auto& p : primes[i]) {
            if (p == 2 || !is_prime(p)) throw DomainError(p.get_str() + " is not an odd prime");
            if (!mpz_divisible_ui_p(mpz_class(p - 1).get_mpz_t(), groups[i].exponent()))
                throw DomainError(p.get_str() + " is not 1 mod " + std::to_string(groups[i].exponent()));
            if (!used.insert(p).second) throw DomainError(p.get_str() + " is used twice");
        }
    }
    return assemble(groups, primes);
}

TowerReport verify_tower(const TowerSpec& spec, std::size_t steps) {
    TowerReport report;
    const std::size_t n = std::min(steps, spec.steps());
    for (std::size_t i = 1; i <= n; ++i) {
        const AbelianField& L_prev = spec.L[i - 1];
        const AbelianField& K = spec.K[i];
        StepReport r = step_quantity(L_prev, spec.L[i]);
        r.step = i;
        r.p_prev = largest_ramified_prime(spec.K[i - 1]);
        r.disjoint = intersection(L_prev, K).is_rational();
        r.exceeds_prev = r.quantity.lo > r.p_prev;
        if (!report.steps.empty()) r.increasing = r.quantity.lo > report.steps.back().quantity.hi;
        const unsigned long g = spec.groups[i - 1].order();
        const mpz_class bound = pow_ui(r.p_prev, g * g);
        for (const auto& h : subfield_lattice(K)) {
            if (!h.is_rational() && largest_ramified_prime(h) <= bound) r.escalation = false;
        }
        report.steps.push_back(std::move(r));
    }
    return report;
}

}  // namespace northcott
