#include "northcott/number_theory.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "northcott/errors.hpp"

namespace northcott {

namespace {

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Brent's cycle detection with batched gcds.
mpz_class rho(const mpz_class& n, unsigned long c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const mpz_class& v) {
        mpz_class t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = q * abs(mpz_class(x - y)) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            mpz_class d = abs(mpz_class(x - ys));
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
        split(s, out);
        split(s, out);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        mpz_class d = rho(n, c);
        if (d != n) {
            split(d, out);
            split(n / d, out);
            return;
        }
    }
}

// log of h to base g inside a subgroup of prime order q.
mpz_class bsgs(const mpz_class& g, const mpz_class& h, const mpz_class& m, const mpz_class& q) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
    s += 1;
    std::unordered_map<std::string, mpz_class> baby;
    mpz_class cur = 1;
    for (mpz_class j = 0; j < s; ++j) {
        baby.emplace(cur.get_str(16), j);
        cur = cur * g % m;
    }
    mpz_class ginv;
    if (!mpz_invert(ginv.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t())) throw DomainError("non-invertible generator");
    mpz_class giant = powm(ginv, s, m);
    cur = h % m;
    for (mpz_class i = 0; i <= s; ++i) {
        auto it = baby.find(cur.get_str(16));
        if (it != baby.end()) return (i * s + it->second) % q;
        cur = cur * giant % m;
    }
    throw DomainError("element outside the generated subgroup");
}

}  // namespace

bool is_prime(const mpz_class& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

PrimePowers factorize(const mpz_class& value) {
    mpz_class n = abs(value);
    if (n == 0) throw DomainError("factorization of zero");
    std::map<mpz_class, unsigned> found;
    for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
        if (mpz_class(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++found[p];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    split(n, found);
    return PrimePowers(found.begin(), found.end());
}

unsigned valuation(mpz_class n, const mpz_class& p) {
    if (n == 0) throw DomainError("valuation of zero");
    return static_cast<unsigned>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

mpz_class next_prime_one_mod(const mpz_class& above, const mpz_class& n) {
    if (n < 1) throw DomainError("modulus must be positive");
    // above - r is the largest value <= above that is 1 mod n.
    mpz_class r, t = above - 1;
    mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    mpz_class p = above - r + n;
    while (!is_prime(p)) p += n;
    return p;
}

mpz_class primitive_root_prime_power(const mpz_class& p) {
    if (p == 2 || !is_prime(p)) throw DomainError("primitive roots here need an odd prime");
    const mpz_class pm1 = p - 1;
    const PrimePowers f = factorize(pm1);
    const mpz_class p2 = p * p;
    for (mpz_class g = 2;; ++g) {
        bool ok = true;
        for (const auto& [q, e] : f) {
            if (powm(g, pm1 / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok && powm(g, pm1, p2) != 1) return g;
    }
}

mpz_class discrete_log(const mpz_class& g, const mpz_class& h, const mpz_class& m, const mpz_class& order,
                       const PrimePowers& order_factors) {
    // Pohlig-Hellman: solve modulo each q^e and combine with CRT.
    mpz_class x = 0, mod = 1;
    for (const auto& [q, e] : order_factors) {
        mpz_class qe;
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), e);
        const mpz_class cof = order / qe;
        const mpz_class gq = powm(g, cof, m);               // order q^e
        const mpz_class hq = powm(h, cof, m);
        const mpz_class gamma = powm(gq, qe / q, m);         // order q
        mpz_class xk = 0, qk = 1;
        for (unsigned k = 0; k < e; ++k) {
            mpz_class ginv;
            mpz_invert(ginv.get_mpz_t(), gq.get_mpz_t(), m.get_mpz_t());
            mpz_class hk = hq * powm(ginv, xk, m) % m;
            hk = powm(hk, qe / (qk * q), m);
            mpz_class d = bsgs(gamma, hk, m, q);
            xk += d * qk;
            qk *= q;
        }
        // CRT merge of x mod `mod` with xk mod qe.
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), qe.get_mpz_t());
        mpz_class t = (xk - x) % qe;
        if (t < 0) t += qe;
        t = t * inv % qe;
        x += mod * t;
        mod *= qe;
    }
    x %= order;
    if (x < 0) x += order;
    if (powm(g, x, m) != h % m) throw DomainError("element outside the generated subgroup");
    return x;
}

}  // namespace northcott
