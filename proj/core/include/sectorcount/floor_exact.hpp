#pragma once

#include "sectorcount/rational.hpp"
#include "sectorcount/slope.hpp"

namespace sectorcount {

// Exact floors of the expression shapes the counters need. Every overload is
// decided by integer arithmetic (squaring tests or floor division); none can
// be off by one.

Int floor_certified(const Rat& x);

Int floor_certified(const QuadVal& x);

// floor(a / (b * sqrt(n))) for a >= 0, b > 0, n > 0. Handles square n.
Int floor_div_sqrt(const Int& a, const Int& b, const Int& n);

// Largest integer k >= 0 with k^2 * x <= bound, for x > 0. This is
// floor(sqrt(bound / x)), used for the triangle limit floor(R / sqrt(1+alpha^2)).
Int max_k_square_le(const QuadVal& x, const Rat& bound);
Int max_k_square_le(const Rat& x, const Rat& bound);

// floor(R / sqrt(1 + alpha^2)): the m-range limit of the triangle count.
Int triangle_m_limit(const SlopeValue& alpha, const Rat& R);

}  // namespace sectorcount
