#include "northcott/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "northcott/errors.hpp"

namespace northcott {

namespace {

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, p < 2^31, coefficients low degree first.

using u64 = std::uint64_t;
using Fp = std::vector<u64>;

struct PrimeField {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }

    static void trim(Fp& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    static int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

    Fp reduce(const IntPoly& f) const {
        Fp r(f.coeffs().size());
        mpz_class t;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
        }
        trim(r);
        return r;
    }

    Fp sub(const Fp& a, const Fp& b) const {
        Fp r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
        trim(r);
        return r;
    }

    Fp mul(const Fp& a, const Fp& b) const {
        if (a.empty() || b.empty()) return {};
        Fp r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
        trim(r);
        return r;
    }

    // a = q*b + r
    void divmod(const Fp& a, const Fp& b, Fp* q, Fp* r) const {
        if (b.empty()) throw InvariantViolation("F_p division by zero");
        Fp rem = a;
        const int db = deg(b);
        const u64 linv = inv(b.back());
        Fp quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
        for (int i = deg(rem); i >= db; --i) {
            u64 c = mul(rem[static_cast<std::size_t>(i)], linv);
            if (c == 0) continue;
            quo[static_cast<std::size_t>(i - db)] = c;
            for (int j = 0; j <= db; ++j) {
                auto& slot = rem[static_cast<std::size_t>(i - db + j)];
                slot = sub(slot, mul(c, b[static_cast<std::size_t>(j)]));
            }
        }
        trim(rem);
        trim(quo);
        if (q) *q = std::move(quo);
        if (r) *r = std::move(rem);
    }

    Fp rem(const Fp& a, const Fp& b) const {
        Fp r;
        divmod(a, b, nullptr, &r);
        return r;
    }

    Fp quo(const Fp& a, const Fp& b) const {
        Fp q;
        divmod(a, b, &q, nullptr);
        return q;
    }

    Fp monic(Fp a) const {
        if (a.empty()) return a;
        u64 li = inv(a.back());
        for (auto& c : a) c = mul(c, li);
        return a;
    }

    Fp gcd(Fp a, Fp b) const {
        while (!b.empty()) {
            Fp r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(std::move(a));
    }

    // s with s*a = 1 mod m, assuming gcd(a, m) = 1.
    Fp inverse_mod(const Fp& a, const Fp& m) const {
        Fp r0 = m, r1 = rem(a, m);
        Fp s0, s1{1};
        while (!r1.empty()) {
            Fp q, r;
            divmod(r0, r1, &q, &r);
            Fp s2 = sub(s0, mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (deg(r0) != 0) throw InvariantViolation("F_p inverse of a non-unit");
        u64 li = inv(r0[0]);
        for (auto& c : s0) c = mul(c, li);
        return rem(s0, m);
    }

    Fp powmod(Fp base, const mpz_class& e, const Fp& m) const {
        Fp result{1};
        base = rem(base, m);
        const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            result = rem(mul(result, result), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base), m);
        }
        return result;
    }

    Fp derivative(const Fp& a) const {
        if (a.size() <= 1) return {};
        Fp r(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
        trim(r);
        return r;
    }
};

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<Fp, int>> distinct_degree(const PrimeField& F, Fp f) {
    std::vector<std::pair<Fp, int>> out;
    const Fp x{0, 1};
    Fp h = x;
    int i = 1;
    while (PrimeField::deg(f) >= 2 * i) {
        h = F.powmod(h, mpz_class(static_cast<unsigned long>(F.p)), f);
        Fp g = F.gcd(f, F.sub(h, x));
        if (PrimeField::deg(g) > 0) {
            out.emplace_back(g, i);
            f = F.quo(f, g);
            h = F.rem(h, f);
        }
        ++i;
    }
    if (PrimeField::deg(f) > 0) out.emplace_back(f, PrimeField::deg(f));
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (p odd).
void equal_degree(const PrimeField& F, const Fp& g, int d, std::mt19937_64& rng, std::vector<Fp>& out) {
    const int n = PrimeField::deg(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> dist(0, F.p - 1);
    while (true) {
        Fp a(static_cast<std::size_t>(n));
        for (auto& c : a) c = dist(rng);
        PrimeField::trim(a);
        if (PrimeField::deg(a) < 1) continue;
        Fp b = F.powmod(a, e, g);
        b = F.sub(b, Fp{1});
        Fp u = F.gcd(g, b);
        const int du = PrimeField::deg(u);
        if (du > 0 && du < n) {
            equal_degree(F, u, d, rng, out);
            equal_degree(F, F.quo(g, u), d, rng, out);
            return;
        }
    }
}

std::vector<Fp> factor_mod_p(const PrimeField& F, const Fp& f_monic) {
    std::mt19937_64 rng(0x5eedULL ^ F.p);
    std::vector<Fp> out;
    for (auto& [g, d] : distinct_degree(F, f_monic)) equal_degree(F, g, d, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

int count_factors_mod_p(const PrimeField& F, const Fp& f_monic) {
    int count = 0;
    for (auto& [g, d] : distinct_degree(F, f_monic)) count += PrimeField::deg(g) / d;
    return count;
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo p^k, stored as IntPoly-like coefficient vectors.

using Zv = std::vector<mpz_class>;

void reduce_mod(Zv& a, const mpz_class& m) {
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Zv mul_mod(const Zv& a, const Zv& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    Zv r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    reduce_mod(r, m);
    return r;
}

Zv from_fp(const Fp& a) {
    Zv r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
    return r;
}

Fp to_fp(const Zv& a, const PrimeField& F) {
    Fp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), F.p);
    PrimeField::trim(r);
    return r;
}

// Multifactor linear Hensel lifting: f = lc(f) * prod g_i (mod p^K) with
// every g_i monic.
std::vector<Zv> hensel_lift(const IntPoly& f, const std::vector<Fp>& factors, const PrimeField& F, unsigned K,
                            const mpz_class& modulus) {
    const std::size_t r = factors.size();
    mpz_class linv;
    mpz_class lc = f.leading();
    mpz_invert(linv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t());
    Zv target = f.coeffs();
    for (auto& c : target) c *= linv;
    reduce_mod(target, modulus);

    // s_i = (prod_{j != i} g_j)^(-1) mod g_i over F_p.
    std::vector<Fp> s(r);
    for (std::size_t i = 0; i < r; ++i) {
        Fp others{1};
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) others = F.mul(others, factors[j]);
        s[i] = F.inverse_mod(others, factors[i]);
    }

    std::vector<Zv> g(r);
    for (std::size_t i = 0; i < r; ++i) g[i] = from_fp(factors[i]);

    mpz_class pj = static_cast<unsigned long>(F.p);
    for (unsigned step = 1; step < K; ++step) {
        mpz_class next = pj * static_cast<unsigned long>(F.p);
        Zv prod{mpz_class(1)};
        for (const auto& gi : g) prod = mul_mod(prod, gi, next);
        Zv t = target;
        reduce_mod(t, next);
        Zv diff(std::max(t.size(), prod.size()));
        for (std::size_t i = 0; i < t.size(); ++i) diff[i] += t[i];
        for (std::size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
        reduce_mod(diff, next);
        for (auto& c : diff) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
        Fp e = to_fp(diff, F);
        if (!e.empty()) {
            for (std::size_t i = 0; i < r; ++i) {
                Fp corr = F.rem(F.mul(s[i], e), factors[i]);
                Zv& gi = g[i];
                if (gi.size() < corr.size()) gi.resize(corr.size());
                for (std::size_t k = 0; k < corr.size(); ++k) {
                    mpz_class c = pj * static_cast<unsigned long>(corr[k]);
                    gi[k] += c;
                }
            }
        }
        pj = next;
    }
    return g;
}

IntPoly symmetric(Zv a, const mpz_class& m) {
    mpz_class half = m / 2;
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    return IntPoly(std::move(a));
}

std::vector<IntPoly> irreducible_factors_squarefree(const IntPoly& f) {
    // f is primitive, square-free, deg >= 1, positive leading coefficient.
    const int n = f.degree();
    if (n == 1) return {f};
    if (n == 2) {
        mpz_class d = f[1] * f[1] - 4 * f[0] * f[2];
        if (!mpz_perfect_square_p(d.get_mpz_t())) return {f};
    }

    // Choose a prime with good reduction and the fewest modular factors.
    const IntPoly df = f.derivative();
    unsigned long best_p = 0;
    int best_count = 0;
    int tried = 0;
    mpz_class candidate = 2;
    while (tried < 5) {
        mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
        if (candidate > 2147483647UL) throw InvariantViolation("no good reduction prime below 2^31");
        const unsigned long p = candidate.get_ui();
        if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
        PrimeField F{p};
        Fp fb = F.reduce(f);
        Fp g = F.gcd(fb, F.reduce(df));
        if (PrimeField::deg(g) != 0) continue;
        ++tried;
        int count = count_factors_mod_p(F, F.monic(fb));
        if (best_p == 0 || count < best_count) {
            best_p = p;
            best_count = count;
        }
        if (count == 1) return {f};
    }

    PrimeField F{best_p};
    std::vector<Fp> modular = factor_mod_p(F, F.monic(F.reduce(f)));

    // Mignotte-style bound on factor coefficients: 2^n * ||f||_2.
    mpz_class norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    mpz_class norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    mpz_class bound = norm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
    bound *= 2 * abs(f.leading());

    unsigned K = 1;
    mpz_class modulus = static_cast<unsigned long>(best_p);
    while (modulus <= bound) {
        modulus *= best_p;
        ++K;
    }
    std::vector<Zv> lifted = hensel_lift(f, modular, F, K, modulus);

    // Recombination over subsets of increasing size.
    std::vector<IntPoly> found;
    IntPoly rest = f;
    std::vector<Zv> pool = std::move(lifted);
    std::size_t size = 1;
    while (2 * size <= pool.size()) {
        bool progress = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            Zv prod{rest.leading()};
            for (std::size_t i : idx) prod = mul_mod(prod, pool[i], modulus);
            IntPoly cand = symmetric(prod, modulus).primitive_part();
            if (cand.degree() >= 1) {
                if (auto q = divide_exact(rest, cand)) {
                    found.push_back(cand.canonical());
                    rest = *q;
                    std::vector<Zv> remaining;
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(pool[i]);
                    pool = std::move(remaining);
                    progress = true;
                    break;
                }
            }
            // next combination
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == pool.size() - size + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!progress) ++size;
    }
    if (rest.degree() >= 1) found.push_back(rest.canonical());
    return found;
}

}  // namespace

IntPoly Factorization::expand() const {
    IntPoly r = IntPoly::constant(content);
    for (const auto& f : factors) r *= pow(f.poly, f.multiplicity);
    return r;
}

std::vector<Factor> squarefree_decomposition(const IntPoly& f) {
    std::vector<Factor> out;
    IntPoly a = f.canonical();
    if (a.degree() < 1) return out;
    IntPoly g = gcd(a, a.derivative());
    IntPoly w = divide_exact(a, g).value().canonical();
    unsigned i = 1;
    while (w.degree() > 0) {
        IntPoly y = gcd(w, g);
        IntPoly z = divide_exact(w, y).value().canonical();
        if (z.degree() > 0) out.push_back({z, i});
        w = y;
        g = divide_exact(g, y).value().canonical();
        ++i;
    }
    return out;
}

Factorization factor(const IntPoly& f) {
    if (f.is_zero()) throw DomainError("factorization of the zero polynomial");
    Factorization result;
    result.content = f.content();
    if (f.leading() < 0) result.content = -result.content;
    if (f.degree() == 0) return result;
    for (const auto& [z, mult] : squarefree_decomposition(f)) {
        for (auto& h : irreducible_factors_squarefree(z)) result.factors.push_back({std::move(h), mult});
    }
    std::sort(result.factors.begin(), result.factors.end(), [](const Factor& a, const Factor& b) {
        auto c = canonical_compare(a.poly, b.poly);
        if (c != 0) return c < 0;
        return a.multiplicity < b.multiplicity;
    });
    return result;
}

bool is_irreducible(const IntPoly& f) {
    if (f.degree() < 1) return false;
    IntPoly g = f.canonical();
    if (g.degree() == 1) return true;
    if (gcd(g, g.derivative()).degree() > 0) return false;
    auto parts = irreducible_factors_squarefree(g);
    return parts.size() == 1;
}

IntPoly squarefree_part(const IntPoly& f) {
    IntPoly r = IntPoly::constant(1);
    for (const auto& fac : squarefree_decomposition(f)) r *= fac.poly;
    return r.canonical();
}

}  // namespace northcott
