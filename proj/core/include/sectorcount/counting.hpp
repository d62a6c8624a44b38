#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sectorcount/continued_fraction.hpp"
#include "sectorcount/enclosure.hpp"
#include "sectorcount/slope.hpp"

namespace sectorcount {

// Default ceiling for the O(R)-per-query brute-force counters.
inline const Int kDefaultBruteCeiling = 100000;

// One counting instance: slope alpha, half-width eps, radius R. Points
// counted are (m, n) with m >= 1, m(alpha-eps) < n < m(alpha+eps) (open
// interval) and m^2 + n^2 <= R^2 (closed disk).
struct SectorQuery {
    SlopeValue alpha;
    Rat epsilon;
    Rat R;

    SectorQuery(SlopeValue a, Rat eps, Rat radius);

    // Direction angle arctan(alpha) and half-angle, for reporting only.
    Interval phi(int bits) const;
    Interval half_angle(int bits) const;
};

// Classes of the triangle partition by d = n*q - m*p for the working
// approximation p/q.
struct PartitionBreakdown {
    Int d_min, d_max;
    Int delta_plus, delta_zero, delta_minus;
    Int q_used;
    Int p_bar;

    Int total() const { return delta_plus + delta_zero + delta_minus; }
};

enum class CountMethod { Brute, FastConvergent, FastRational };

const char* method_name(CountMethod m);

struct CountReport {
    Int S;
    Int Delta;
    std::optional<PartitionBreakdown> breakdown;
    Int band_correction;  // S - Delta, signed
    CountMethod method = CountMethod::Brute;
    double ms = 0.0;
    // Fast sector path only: disk-inactive limit and last possibly occupied m.
    std::optional<Int> m_full;
    std::optional<Int> m_band_end;
};

// Exact sector count by row-by-row enumeration; O(R * (1 + eps R)) exact
// integer operations. Throws CeilingExceeded when R > ceiling.
CountReport count_sector_brute(const SectorQuery& query,
                               const Int& ceiling = kDefaultBruteCeiling);

// Exact triangle count Delta: the same slope strip with the disk constraint
// replaced by m <= R / sqrt(1 + alpha^2).
Int count_triangle_brute(const SectorQuery& query,
                         const Int& ceiling = kDefaultBruteCeiling);

// Exact Delta for an irrational slope via the residue-class partition around
// the convergent p/q. Requires |delta| < eps/2 and alpha - eps > 0.
std::pair<Int, PartitionBreakdown> count_triangle_fast(const SectorQuery& query,
                                                       const Convergent& conv);

// Exact Delta for a rational slope p/q; no preconditions beyond rationality.
std::pair<Int, PartitionBreakdown> count_rational_fast(const SectorQuery& query);

// Exact S: partition count where the disk is provably inactive, plus an
// O(eps R + 1) boundary band checked row by row. Falls back to brute force
// below the ceiling when the fast-path preconditions fail; throws
// FallbackImpossible above it.
CountReport count_sector_fast(const SectorQuery& query,
                              const Int& ceiling = kDefaultBruteCeiling);

// Emptiness sweep: S along the schedule eps = c0 * R^(-lambda) over the
// given radii; reports the largest R at which the sector was non-empty.
struct EmptinessRow {
    Int R;
    Rat eps;
    Int S;
};

struct EmptinessReport {
    std::vector<EmptinessRow> rows;
    std::optional<Int> largest_nonempty;
};

EmptinessReport verify_empty(const SlopeValue& alpha, const Rat& c0, const Rat& lambda,
                             const std::vector<Int>& radii,
                             const Int& ceiling = kDefaultBruteCeiling);

}  // namespace sectorcount
