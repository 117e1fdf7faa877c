#ifndef NORTHCOTT_DYNAMICS_HPP
#define NORTHCOTT_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "northcott/algebraic.hpp"
#include "northcott/heights.hpp"
#include "northcott/northcott.hpp"

namespace northcott {

/*
 * f = num/den over Q with gcd(num, den) = 1. Scaled so the coefficients of
 * num and den together have content 1 and lc(den) > 0.
 */
class RationalMap {
  public:
    RationalMap(IntPoly num, IntPoly den = IntPoly{1});
    static RationalMap parse(std::string_view text);

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }
    int degree() const { return std::max(num_.degree(), den_.degree()); }
    bool is_polynomial() const { return den_.is_constant(); }
    RationalFunction as_function() const { return {num_, den_}; }
    std::string to_string() const;

    friend bool operator==(const RationalMap&, const RationalMap&) = default;

  private:
    IntPoly num_;
    IntPoly den_;
};

/*
 * deg f h(a) - c_lower <= h(f(a)) <= deg f h(a) + c_upper for every
 * algebraic a that is not a pole. c_upper = log max(|num|_1, |den|_1);
 * c_lower = log C from forms A_i, B_i with A_1 F + B_1 G = r X^(2d-1) and
 * A_2 F + B_2 G = r Y^(2d-1), C = max |A_i|_1 + |B_i|_1. Monomials come
 * out with c_lower = c_upper = 0.
 */
struct HeightBounds {
    HeightInterval c_lower;
    HeightInterval c_upper;
    mpz_class lower_scale;  // C
    mpz_class upper_scale;

    /// 2 c_lower, rounded up: above it heights grow by at least 3/2.
    mpq_class threshold() const { return 2 * c_lower.hi; }
};

/// Throws DomainError for degree-0 maps.
HeightBounds height_constants(const RationalMap& f);

struct OrbitResult {
    bool preperiodic = false;
    bool hit_pole = false;          // a pre-pole: classified not preperiodic
    bool escaped = false;           // certified above the threshold
    std::vector<AlgebraicNumber> trace;
    std::optional<std::size_t> cycle_start;  // index in trace the orbit returns to
};

/// Iterates f from a. Needs deg f >= 2. Throws BudgetExceeded after
/// max_steps iterations without a decision.
OrbitResult is_preperiodic(const AlgebraicNumber& a, const RationalMap& f, const HeightBounds& bounds,
                           std::size_t max_steps = 100000);
OrbitResult is_preperiodic(const AlgebraicNumber& a, const RationalMap& f);

struct PreperiodicSet {
    unsigned degree_bound = 0;
    HeightBounds bounds;
    mpq_class search_height;  // strict bound handed to enumerate
    std::vector<AlgebraicNumber> points;  // canonical order
    /// Each cycle starts at its smallest member and follows f.
    std::vector<std::vector<AlgebraicNumber>> cycles;
    /// Strictly preperiodic points with their images.
    std::vector<std::pair<AlgebraicNumber, AlgebraicNumber>> tails;
};

/// Every preperiodic point of degree <= d_max: the Northcott set below
/// 2 c_lower + height_tol, filtered orbit by orbit.
PreperiodicSet preperiodic_points(const RationalMap& f, unsigned d_max, const EnumerateOptions& options = {});

struct PropertyPReport {
    bool admissible = false;  // polynomial of degree >= 2
    bool invariant = false;   // f(X) = X
    bool pole = false;        // some point of X is a pole
    std::vector<AlgebraicNumber> image;
    std::optional<bool> within_preperiodic;
    std::vector<std::vector<AlgebraicNumber>> cycles;
};

PropertyPReport check_property_P_instance(const RationalMap& f, const std::vector<AlgebraicNumber>& X);

enum class RClass { Moebius, FinitenessApplies };

struct RReport {
    RClass kind;
    std::optional<HeightBounds> bounds;  // set when finiteness applies
};

RReport classify_R(const RationalMap& f);

struct SampleValidation {
    std::size_t samples = 0;
    std::size_t poles = 0;
    std::size_t lower_failures = 0;
    std::size_t upper_failures = 0;
    std::size_t threshold_checked = 0;
    std::size_t threshold_failures = 0;
    mpq_class max_height;  // largest sampled h(a), upper end

    bool ok() const { return lower_failures == 0 && upper_failures == 0 && threshold_failures == 0; }
};

/*
 * Draws random a of degree <= 3 and height <= 5 (seeded, reproducible)
 * and checks both bounds and the 3/2 expansion above the threshold on
 * certified enclosures. A failure is counted only when the enclosures
 * prove the inequality false.
 */
SampleValidation validate_height_constants(const RationalMap& f, const HeightBounds& bounds, std::size_t samples,
                                           std::uint64_t seed = 1, unsigned workers = default_workers());

}  // namespace northcott

#endif  // NORTHCOTT_DYNAMICS_HPP
