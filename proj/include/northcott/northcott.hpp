#ifndef NORTHCOTT_NORTHCOTT_HPP
#define NORTHCOTT_NORTHCOTT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "northcott/algebraic.hpp"
#include "northcott/heights.hpp"

namespace northcott {

/// NORTHCOTT_WORKERS if set and positive, else the hardware concurrency.
unsigned default_workers();

struct EnumerateOptions {
    unsigned workers = default_workers();
    /// Maximum number of coefficient vectors examined.
    std::uint64_t budget = 100000000;
    /// Width of the reported height enclosures.
    mpq_class height_tol = default_height_tol();
};

struct NorthcottElement {
    AlgebraicNumber value;
    HeightInterval height;
};

/// All algebraic numbers of degree <= degree_bound with h < height_bound,
/// ordered by minimal polynomial (canonical order) then root index.
struct NorthcottSet {
    unsigned degree_bound = 0;
    mpq_class height_bound;
    std::vector<NorthcottElement> elements;
};

/// Number of coefficient vectors the search for (d, T) visits.
mpz_class enumeration_cells(unsigned d, const mpq_class& T);

/*
 * Exhaustive search of the coefficient box |lc| <= e^{kT},
 * |a_i| <= binom(k, i) e^{kT} for each degree k <= d. Survivors are
 * primitive irreducible polynomials with certified M(f) < e^{kT}; all of
 * their roots are members. Throws BudgetExceeded before searching when
 * the box exceeds options.budget, DomainError for d = 0 or T < 0.
 */
NorthcottSet enumerate(unsigned d, const mpq_class& T, const EnumerateOptions& options = {});

struct BogomolovReport {
    unsigned degree_bound = 0;
    mpq_class height_bound;
    std::size_t torsion_count = 0;  // roots of unity; zero is reported separately
    bool zero_present = false;
    std::vector<NorthcottElement> nontorsion;
    std::optional<HeightInterval> min_nontorsion_height;
    /// Minimal polynomials attaining the minimum (several when heights tie,
    /// as for a and -a).
    std::vector<IntPoly> min_attained_by;
};

BogomolovReport bogomolov_scan(unsigned d, const mpq_class& T, const EnumerateOptions& options = {});

}  // namespace northcott

#endif  // NORTHCOTT_NORTHCOTT_HPP
