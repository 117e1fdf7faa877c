#include "northcott/northcott.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "northcott/cyclotomic.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/real.hpp"

namespace northcott {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

long bits_below(const mpq_class& tol) {
    return static_cast<long>(mpz_sizeinbase(tol.get_den_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(tol.get_num_mpz_t(), 2));
}

// B = e^{kT}, evaluated as tightly as a comparison needs.
class ExpBound {
  public:
    ExpBound(unsigned k, const mpq_class& T) : kt_(T * k) {
        Interval b = at(kCachedPrec);
        lo_ = b.lo().to_q();
        hi_ = b.hi().to_q();
    }

    Interval at(mpfr_prec_t prec) const { return exp(Interval(kt_, prec)); }
    const mpq_class& upper() const { return hi_; }

    /// Certified value < B for a value enclosed in [lo, hi].
    std::optional<bool> below(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) const {
        if (hi < lo_) return true;
        if (lo >= hi_) return false;
        if (prec <= kCachedPrec) return std::nullopt;
        Interval b = at(prec);
        if (hi < b.lo().to_q()) return true;
        if (lo >= b.hi().to_q()) return false;
        return std::nullopt;
    }

    /// Exact rational against B. Never a tie: e^{kT} is transcendental for
    /// rational kT != 0.
    bool exact_below(const mpq_class& v) const {
        for (mpfr_prec_t prec = kCachedPrec; prec <= (1 << 16); prec *= 2) {
            if (auto d = below(v, v, prec)) return *d;
        }
        throw InvariantViolation("comparison with e^{kT} undecided");
    }

  private:
    static constexpr mpfr_prec_t kCachedPrec = 192;
    mpq_class kt_;
    mpq_class lo_;
    mpq_class hi_;
};

struct DegreeBox {
    unsigned k = 0;
    long lead_max = 0;
    std::vector<long> bound;  // |a_i| <= bound[i] for i < k
};

DegreeBox box_for(unsigned k, const mpq_class& T) {
    Interval b = ExpBound(k, T).at(128);
    mpq_class bhi = b.hi().to_q();
    DegreeBox box;
    box.k = k;
    mpz_class lead = floor_q(bhi);
    const mpz_class limit = mpz_class(1) << 40;
    if (lead > limit) throw BudgetExceeded("coefficient box too large to enumerate");
    box.lead_max = lead.get_si();
    for (unsigned i = 0; i < k; ++i) {
        mpz_class c = floor_q(bhi * binomial(k, i));
        if (c > limit) throw BudgetExceeded("coefficient box too large to enumerate");
        box.bound.push_back(c.get_si());
    }
    return box;
}

mpz_class box_cells(const DegreeBox& box) {
    mpz_class cells = box.lead_max;
    for (long b : box.bound) cells *= 2 * b + 1;
    return cells;
}

struct Accepted {
    IntPoly f;
    std::vector<Disk> disks;
    HeightInterval height;
};

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

bool has_rational_root(const IntPoly& f) {
    if (f[0] == 0) return true;
    for (const auto& p : divisors(f[0])) {
        for (const auto& q : divisors(f.leading())) {
            mpq_class r(p, q);
            r.canonicalize();
            if (f.eval(r) == 0 || f.eval(mpq_class(-r)) == 0) return true;
        }
    }
    return false;
}

bool irreducible(const IntPoly& f) {
    if (f.degree() == 1) return true;
    if (f.degree() <= 3) return !has_rational_root(f);
    return is_irreducible(f);
}

// Decides M(f) < e^{kT} for a primitive irreducible f of degree k.
std::optional<Accepted> examine(const IntPoly& f, const ExpBound& bound, const mpq_class& height_tol) {
    if (f.degree() == 1) {
        mpz_class m = std::max<mpz_class>(abs(f[0]), abs(f[1]));
        if (!bound.exact_below(mpq_class(m))) return std::nullopt;
        mpq_class root(-f[0], f[1]);
        root.canonicalize();
        Accepted a{f, {Disk{root, 0, 0}}, {}};
        a.height = weil_height(AlgebraicNumber::trusted(f, 0, a.disks[0]), height_tol);
        return a;
    }
    if (cyclotomic_index(f)) {
        // Torsion: h = 0 < T.
        return Accepted{f, isolate_roots(f, default_isolation_tol(f)), {0, 0}};
    }
    // Radii of tol/(4B) make the measure enclosure narrow enough for the
    // reported height, so one isolation usually serves both purposes.
    mpq_class tol = std::min<mpq_class>(default_isolation_tol(f), height_tol / (4 * bound.upper()));
    for (int round = 0; round < 24; ++round) {
        std::vector<Disk> disks = isolate_roots(f, tol);
        HeightInterval m = measure_from_disks(f, disks);
        auto decided = bound.below(m.lo, m.hi, static_cast<mpfr_prec_t>(std::max(128L, bits_below(tol) + 64)));
        if (decided) {
            if (!*decided) return std::nullopt;
            HeightInterval h = height_from_measure(m, f.degree(), height_tol);
            if (h.width() > height_tol) h = weil_height(AlgebraicNumber::trusted(f, 0, disks[0]), height_tol);
            return Accepted{f, std::move(disks), h};
        }
        tol /= mpq_class(mpz_class(1) << 16);
    }
    throw InvariantViolation("measure comparison undecided");
}

// One stripe fixes the degree, the leading coefficient and a_{k-1}.
struct Stripe {
    std::size_t box;
    long lead;
    long next;
};

void search_stripe(const DegreeBox& box, const Stripe& s, const ExpBound& bound, const mpq_class& height_tol,
                   std::vector<Accepted>& out) {
    const unsigned k = box.k;
    std::vector<mpz_class> c(k + 1);
    c[k] = s.lead;
    c[k - 1] = s.next;
    auto visit = [&]() {
        if (k >= 2 && c[0] == 0) return;
        IntPoly f(c);
        if (f.content() != 1) return;
        if (!irreducible(f)) return;
        if (auto a = examine(f, bound, height_tol)) out.push_back(std::move(*a));
    };
    if (k == 1) {
        visit();
        return;
    }
    // Odometer over a_0 .. a_{k-2}.
    std::vector<long> v(k - 1);
    for (unsigned i = 0; i + 1 < k; ++i) v[i] = -box.bound[i];
    while (true) {
        for (unsigned i = 0; i + 1 < k; ++i) c[i] = v[i];
        visit();
        unsigned i = 0;
        while (i + 1 < k && v[i] == box.bound[i]) {
            v[i] = -box.bound[i];
            ++i;
        }
        if (i + 1 == k) break;
        ++v[i];
    }
}

}  // namespace

unsigned default_workers() {
    if (const char* env = std::getenv("NORTHCOTT_WORKERS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0 && n <= 1024) return static_cast<unsigned>(n);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

mpz_class enumeration_cells(unsigned d, const mpq_class& T) {
    if (T <= 0) return 0;
    mpz_class total = 0;
    for (unsigned k = 1; k <= d; ++k) total += box_cells(box_for(k, T));
    return total;
}

NorthcottSet enumerate(unsigned d, const mpq_class& T, const EnumerateOptions& options) {
    if (d == 0) throw DomainError("degree bound must be at least 1");
    if (T < 0) throw DomainError("height bound must be non-negative");
    NorthcottSet result;
    result.degree_bound = d;
    result.height_bound = T;
    if (T == 0) return result;

    const mpz_class cells = enumeration_cells(d, T);
    if (cells > mpz_class(std::to_string(options.budget)))
        throw BudgetExceeded("enumeration box has " + cells.get_str() + " cells, budget is " +
                             std::to_string(options.budget));

    std::vector<DegreeBox> boxes;
    std::vector<ExpBound> bounds;
    std::vector<Stripe> stripes;
    for (unsigned k = 1; k <= d; ++k) {
        boxes.push_back(box_for(k, T));
        bounds.emplace_back(k, T);
        const DegreeBox& b = boxes.back();
        for (long lead = 1; lead <= b.lead_max; ++lead) {
            for (long next = -b.bound[k - 1]; next <= b.bound[k - 1]; ++next) stripes.push_back({k - 1, lead, next});
        }
    }

    std::atomic<std::size_t> cursor{0};
    std::vector<Accepted> found;
    std::mutex mu;
    std::exception_ptr failure;
    auto work = [&]() {
        std::vector<Accepted> local;
        try {
            for (std::size_t i = cursor++; i < stripes.size(); i = cursor++) {
                const Stripe& s = stripes[i];
                search_stripe(boxes[s.box], s, bounds[s.box], options.height_tol, local);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure) failure = std::current_exception();
            cursor = stripes.size();
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto& a : local) found.push_back(std::move(a));
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, static_cast<unsigned>(stripes.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::sort(found.begin(), found.end(),
              [](const Accepted& a, const Accepted& b) { return canonical_compare(a.f, b.f) < 0; });
    for (const auto& a : found) {
        for (std::size_t i = 0; i < a.disks.size(); ++i)
            result.elements.push_back({AlgebraicNumber::trusted(a.f, i, a.disks[i]), a.height});
    }
    return result;
}

BogomolovReport bogomolov_scan(unsigned d, const mpq_class& T, const EnumerateOptions& options) {
    NorthcottSet set = enumerate(d, T, options);
    BogomolovReport r;
    r.degree_bound = d;
    r.height_bound = T;
    for (const auto& e : set.elements) {
        if (e.value.minpoly() == IntPoly::x()) {
            r.zero_present = true;
        } else if (e.value.is_torsion()) {
            ++r.torsion_count;
        } else {
            r.nontorsion.push_back(e);
        }
    }
    if (r.nontorsion.empty()) return r;
    // Conjugates share a height, so one enclosure per minimal polynomial.
    std::vector<std::pair<IntPoly, HeightInterval>> hs;
    for (const auto& e : r.nontorsion) {
        if (hs.empty() || hs.back().first != e.value.minpoly()) hs.emplace_back(e.value.minpoly(), e.height);
    }
    auto best = std::min_element(hs.begin(), hs.end(),
                                 [](const auto& a, const auto& b) { return a.second.hi < b.second.hi; });
    r.min_nontorsion_height = best->second;
    // Equal heights (a and -a, a and 1/a) overlap at every tolerance.
    for (const auto& [f, h] : hs) {
        if (h.lo <= best->second.hi) r.min_attained_by.push_back(f);
    }
    return r;
}

}  // namespace northcott
