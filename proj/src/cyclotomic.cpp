#include "northcott/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "northcott/errors.hpp"
#include "northcott/factor.hpp"

namespace northcott {

namespace {

int moebius(unsigned long n) {
    int mu = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

IntPoly cyclotomic(unsigned long n) {
    if (n == 0) throw DomainError("cyclotomic polynomial of index 0");
    static std::mutex mutex;
    static std::map<unsigned long, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    // Phi_n = prod_{d | n} (x^d - 1)^mu(n/d)
    IntPoly num = IntPoly::constant(1);
    IntPoly den = IntPoly::constant(1);
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int mu = moebius(n / d);
        if (mu == 0) continue;
        IntPoly term = IntPoly::monomial(1, d) - IntPoly::constant(1);
        (mu > 0 ? num : den) *= term;
    }
    IntPoly phi = divide_exact(num, den).value();
    if (phi.leading() < 0) phi = -phi;
    std::lock_guard lock(mutex);
    cache.emplace(n, phi);
    return phi;
}

std::optional<unsigned long> cyclotomic_index(const IntPoly& f) {
    const int k = f.degree();
    if (k < 1 || f.leading() != 1 || abs(f[0]) != 1) return std::nullopt;
    // phi(n) >= sqrt(n/2), so n <= 2k^2.
    const unsigned long limit = 2UL * static_cast<unsigned long>(k) * static_cast<unsigned long>(k) + 2;
    for (unsigned long n = 1; n <= limit; ++n) {
        if (euler_phi(n) != static_cast<unsigned long>(k)) continue;
        if (cyclotomic(n) == f) return n;
    }
    return std::nullopt;
}

std::optional<unsigned long> root_of_unity_order(const IntPoly& f) {
    if (!is_irreducible(f)) throw DomainError("root_of_unity_order expects an irreducible polynomial, got " + f.to_string());
    return cyclotomic_index(f.canonical());
}

}  // namespace northcott
