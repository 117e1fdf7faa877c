#include "northcott/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/real.hpp"

namespace northcott {

namespace {

constexpr mpfr_prec_t kLogPrec = 128;

HeightInterval log_enclosure(const mpz_class& c) {
    if (c == 1) return {0, 0};
    Interval v = log(Interval(c, kLogPrec));
    return {v.lo().to_q(), v.hi().to_q()};
}

mpz_class l1_norm(const std::vector<mpz_class>& v) {
    mpz_class s = 0;
    for (const auto& a : v) s += abs(a);
    return s;
}

// Solves m u = rhs over Q; m is square and nonsingular.
std::vector<mpq_class> solve(std::vector<std::vector<mpq_class>> m, std::vector<mpq_class> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw InvariantViolation("singular Sylvester system");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const mpq_class k = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= k * m[col][c];
            rhs[r] -= k * rhs[col];
        }
    }
    std::vector<mpq_class> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = rhs[i] / m[i][i];
    return u;
}

// Strict h(x) > t, decided exactly.
bool height_above(const AlgebraicNumber& x, const mpq_class& t) {
    if (x.is_torsion()) return false;
    if (t <= 0) return true;
    return !height_below(x, t);
}

template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn fn) {
    std::atomic<std::size_t> cursor{0};
    std::mutex mu;
    std::exception_ptr failure;
    auto work = [&]() {
        try {
            for (std::size_t i = cursor++; i < n; i = cursor++) fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure) failure = std::current_exception();
            cursor = n;
        }
    };
    const unsigned w = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < w; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// Splits a finite f-closed set into cycles and tails.
void decompose(const std::vector<AlgebraicNumber>& points, const std::vector<AlgebraicNumber>& images,
               std::vector<std::vector<AlgebraicNumber>>& cycles,
               std::vector<std::pair<AlgebraicNumber, AlgebraicNumber>>& tails) {
    std::map<AlgebraicNumber, std::size_t> index;
    for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);
    std::vector<std::size_t> next(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto it = index.find(images[i]);
        if (it == index.end()) throw InvariantViolation("preperiodic set not closed under the map");
        next[i] = it->second;
    }
    std::vector<bool> periodic(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t j = next[i];
        for (std::size_t k = 0; k < points.size() && j != i; ++k) j = next[j];
        periodic[i] = j == i;
    }
    std::vector<bool> used(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!periodic[i]) {
            tails.emplace_back(points[i], images[i]);
            continue;
        }
        if (used[i]) continue;
        std::vector<AlgebraicNumber> cycle;
        for (std::size_t j = i; !used[j]; j = next[j]) {
            used[j] = true;
            cycle.push_back(points[j]);
        }
        cycles.push_back(std::move(cycle));
    }
}

}  // namespace

RationalMap::RationalMap(IntPoly num, IntPoly den) {
    RationalFunction r = reduce_fraction(std::move(num), std::move(den));
    num_ = std::move(r.num);
    den_ = std::move(r.den);
}

RationalMap RationalMap::parse(std::string_view text) {
    RationalFunction r = parse_rational_function(text);
    return RationalMap(std::move(r.num), std::move(r.den));
}

std::string RationalMap::to_string() const {
    if (den_ == IntPoly{1}) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

HeightBounds height_constants(const RationalMap& f) {
    const int d = f.degree();
    if (d < 1) throw DomainError("height constants need a map of degree at least 1");
    const std::size_t n = static_cast<std::size_t>(d);
    std::vector<mpz_class> F(n + 1), G(n + 1);  // coefficient of X^i Y^(d-i)
    for (std::size_t i = 0; i <= n; ++i) {
        F[i] = f.num()[i];
        G[i] = f.den()[i];
    }
    HeightBounds b;
    b.upper_scale = std::max(l1_norm(F), l1_norm(G));
    b.c_upper = log_enclosure(b.upper_scale);

    std::vector<std::vector<mpq_class>> m(2 * n, std::vector<mpq_class>(2 * n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i <= n; ++i) {
            m[i + j][j] = F[i];
            m[i + j][n + j] = G[i];
        }
    }
    std::vector<mpq_class> ex(2 * n, 0), ey(2 * n, 0);
    ex[2 * n - 1] = 1;
    ey[0] = 1;
    const std::vector<mpq_class> ux = solve(m, ex);
    const std::vector<mpq_class> uy = solve(m, ey);
    mpz_class r = 1;
    for (const auto* u : {&ux, &uy}) {
        for (const auto& q : *u) mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), q.get_den_mpz_t());
    }
    b.lower_scale = 0;
    for (const auto* u : {&ux, &uy}) {
        mpz_class s = 0;
        for (const auto& q : *u) s += abs(mpz_class(q.get_num() * (r / q.get_den())));
        b.lower_scale = std::max(b.lower_scale, s);
    }
    b.c_lower = log_enclosure(b.lower_scale);
    return b;
}

OrbitResult is_preperiodic(const AlgebraicNumber& a, const RationalMap& f, const HeightBounds& bounds,
                           std::size_t max_steps) {
    if (f.degree() < 2) throw DomainError("preperiodicity needs a map of degree at least 2");
    const mpq_class t = bounds.threshold();
    OrbitResult out;
    std::map<AlgebraicNumber, std::size_t> seen;
    AlgebraicNumber x = a;
    for (std::size_t step = 0; step <= max_steps; ++step) {
        auto [it, fresh] = seen.emplace(x, out.trace.size());
        if (!fresh) {
            out.preperiodic = true;
            out.cycle_start = it->second;
            return out;
        }
        out.trace.push_back(x);
        // Above 2 c_lower heights grow by 3/2 each step, so no return.
        if (height_above(x, t)) {
            out.escaped = true;
            return out;
        }
        try {
            x = algebraic_eval(f.as_function(), x);
        } catch (const PoleError&) {
            out.hit_pole = true;
            return out;
        }
    }
    throw BudgetExceeded("orbit undecided after " + std::to_string(max_steps) + " steps");
}

OrbitResult is_preperiodic(const AlgebraicNumber& a, const RationalMap& f) {
    return is_preperiodic(a, f, height_constants(f));
}

PreperiodicSet preperiodic_points(const RationalMap& f, unsigned d_max, const EnumerateOptions& options) {
    if (f.degree() < 2) throw DomainError("preperiodic points need a map of degree at least 2");
    PreperiodicSet out;
    out.degree_bound = d_max;
    out.bounds = height_constants(f);
    out.search_height = out.bounds.threshold() + options.height_tol;
    NorthcottSet candidates = enumerate(d_max, out.search_height, options);

    const std::size_t n = candidates.elements.size();
    std::vector<char> keep(n, 0);
    std::vector<std::optional<AlgebraicNumber>> image(n);
    parallel_for(n, options.workers, [&](std::size_t i) {
        const AlgebraicNumber& x = candidates.elements[i].value;
        OrbitResult r = is_preperiodic(x, f, out.bounds);
        if (r.preperiodic) {
            keep[i] = 1;
            image[i] = r.trace.size() > 1 ? r.trace[1] : r.trace[0];
        }
    });
    std::vector<AlgebraicNumber> images;
    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        out.points.push_back(candidates.elements[i].value);
        images.push_back(*image[i]);
    }
    decompose(out.points, images, out.cycles, out.tails);
    return out;
}

PropertyPReport check_property_P_instance(const RationalMap& f, const std::vector<AlgebraicNumber>& X) {
    PropertyPReport r;
    r.admissible = f.is_polynomial() && f.degree() >= 2;
    std::vector<AlgebraicNumber> points(X);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& x : points) {
        try {
            r.image.push_back(algebraic_eval(f.as_function(), x));
        } catch (const PoleError&) {
            r.pole = true;
        }
    }
    std::vector<AlgebraicNumber> image_set(r.image);
    std::sort(image_set.begin(), image_set.end());
    image_set.erase(std::unique(image_set.begin(), image_set.end()), image_set.end());
    r.invariant = !r.pole && image_set == points;
    if (r.admissible && r.invariant) {
        // Membership in the preperiodic set is decided point by point; it
        // is the same set preperiodic_points would enumerate.
        const HeightBounds b = height_constants(f);
        bool all = true;
        for (const auto& x : points) all = all && is_preperiodic(x, f, b).preperiodic;
        r.within_preperiodic = all;
        std::vector<std::pair<AlgebraicNumber, AlgebraicNumber>> tails;
        decompose(points, r.image, r.cycles, tails);
    }
    return r;
}

RReport classify_R(const RationalMap& f) {
    if (f.degree() <= 1) return {RClass::Moebius, std::nullopt};
    return {RClass::FinitenessApplies, height_constants(f)};
}

namespace {

struct Sample {
    AlgebraicNumber a;
    HeightInterval h;
};

AlgebraicNumber draw(std::mt19937_64& rng) {
    static const long kBounds[] = {1, 3, 10, 100};
    while (true) {
        const int k = std::uniform_int_distribution<int>(1, 3)(rng);
        const long B = kBounds[std::uniform_int_distribution<int>(0, 3)(rng)];
        std::uniform_int_distribution<long> coeff(-B, B);
        std::vector<mpz_class> c(static_cast<std::size_t>(k) + 1);
        for (auto& v : c) v = coeff(rng);
        if (c.back() == 0) continue;
        IntPoly p = IntPoly(std::move(c)).canonical();
        if (!is_irreducible(p)) continue;
        const std::size_t idx = std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(k) - 1)(rng);
        return AlgebraicNumber(p, idx);
    }
}

}  // namespace

SampleValidation validate_height_constants(const RationalMap& f, const HeightBounds& bounds, std::size_t samples,
                                           std::uint64_t seed, unsigned workers) {
    const mpq_class tol(1, mpz_class(1) << 40);
    const mpq_class five = 5;
    std::mt19937_64 rng(seed);
    SampleValidation v;
    std::vector<AlgebraicNumber> points;
    while (points.size() < samples) {
        AlgebraicNumber a = draw(rng);
        if (divides_over_q(a.minpoly(), f.den())) {
            ++v.poles;
            continue;
        }
        points.push_back(std::move(a));
    }
    const mpq_class deg = f.degree();
    const mpq_class t = bounds.threshold();
    struct Outcome {
        bool lower_fail = false, upper_fail = false, threshold_checked = false, threshold_fail = false,
             too_high = false;
        mpq_class h_hi;
    };
    std::vector<Outcome> results(points.size());
    parallel_for(points.size(), workers, [&](std::size_t i) {
        const HeightInterval h = weil_height(points[i], tol);
        const HeightInterval hf = weil_height(algebraic_eval(f.as_function(), points[i]), tol);
        Outcome& o = results[i];
        o.h_hi = h.hi;
        o.too_high = h.lo > five;
        o.lower_fail = deg * h.lo - bounds.c_lower.hi > hf.hi;
        o.upper_fail = hf.lo > deg * h.hi + bounds.c_upper.hi;
        if (h.lo >= t && f.degree() >= 2) {
            o.threshold_checked = true;
            o.threshold_fail = hf.hi < mpq_class(3, 2) * h.lo;
        }
    });
    v.samples = points.size();
    v.max_height = 0;
    for (const auto& o : results) {
        if (o.too_high) throw InvariantViolation("sample above the height range");
        v.lower_failures += o.lower_fail;
        v.upper_failures += o.upper_fail;
        v.threshold_checked += o.threshold_checked;
        v.threshold_failures += o.threshold_fail;
        v.max_height = std::max(v.max_height, o.h_hi);
    }
    return v;
}

}  // namespace northcott
