#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace sectorcount {

// Arbitrary-precision integers and rationals. All counting arithmetic in this
// library is exact; doubles appear only in reporting and fitting.
using Int = mpz_class;
using Rat = mpq_class;

// Floor of sqrt(n); requires n >= 0.
Int isqrt(const Int& n);

// True iff n is a perfect square; optionally returns the root.
bool is_perfect_square(const Int& n, Int* root = nullptr);

// Floor division a/b with b > 0.
Int floor_div(const Int& a, const Int& b);

Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);
bool is_integer(const Rat& x);

// n/d in canonical form; d != 0.
Rat make_rat(const Int& n, const Int& d);

Int pow_int(const Int& base, unsigned long e);
Int pow2(unsigned long e);
Int pow10_int(unsigned long e);

// Number of integers m in [lo, hi] with m = r (mod q); q >= 1.
Int count_in_ap(const Int& lo, const Int& hi, const Int& r, const Int& q);

// Inverse of p modulo q for gcd(p, q) = 1, in [0, q-1]; q >= 1.
Int mod_inverse(const Int& p, const Int& q);

// Geometric grid of `points` integers from r_min to r_max (inclusive),
// r_k = round((r_min^(n-1-k) * r_max^k)^(1/(n-1))). Deterministic, integer
// arithmetic only. points == 1 yields {r_min}.
std::vector<Int> geometric_grid(const Int& r_min, const Int& r_max, int points);

// Nearest dyadic rational K/2^frac_bits to c0 * R^(-lambda), ties rounded up.
// Exact: K is certified by integer power comparisons. Throws if the result
// would be zero (schedule under-flows the dyadic grid) or if R <= 0.
Rat dyadic_power_schedule(const Rat& c0, const Rat& R, const Rat& lambda,
                          unsigned frac_bits = 96);

// Deterministic scientific-notation rendering with `sig` significant digits,
// round-half-up. Used for CSV output, where byte-identical reruns matter.
std::string to_decimal_string(const Rat& x, int sig = 17);

// Accepts "a/b", "a", and decimal strings like "1.25" or "-0.5".
Rat parse_rational(std::string_view text);

// Accepts the forms of parse_rational plus dyadic "m*2^-k".
Rat parse_epsilon(std::string_view text);

}  // namespace sectorcount
