#include "sectorcount/floor_exact.hpp"

#include "sectorcount/errors.hpp"

namespace sectorcount {

Int floor_certified(const Rat& x) {
    return floor_rat(x);
}

Int floor_certified(const QuadVal& x) {
    return floor_quad(x);
}

Int floor_div_sqrt(const Int& a, const Int& b, const Int& n) {
    if (a < 0 || b <= 0 || n <= 0)
        throw NotRepresentable("floor_div_sqrt: need a >= 0, b > 0, n > 0");
    Int w;
    if (is_perfect_square(n, &w)) return floor_div(a, b * w);
    // a/(b*sqrt(n)) = a*sqrt(n)/(b*n); k*(b*n) <= a*sqrt(n) iff
    // (k*b*n)^2 <= a^2*n iff k*b*n <= isqrt(a^2*n).
    return floor_div(isqrt(a * a * n), b * n);
}

Int max_k_square_le(const QuadVal& x, const Rat& bound) {
    if (x.sign() <= 0) throw NotRepresentable("max_k_square_le: x must be positive");
    if (bound < 0) throw NotRepresentable("max_k_square_le: bound must be >= 0");
    auto fits = [&](const Int& k) {
        // k^2 * x <= bound, decided exactly.
        return quad_scale(x, Int(k * k)).compare(bound) <= 0;
    };
    Int hi = 1;
    while (fits(hi)) hi <<= 1;
    Int lo = 0;
    while (hi - lo > 1) {
        Int mid = (lo + hi) >> 1;
        if (fits(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Int max_k_square_le(const Rat& x, const Rat& bound) {
    if (x <= 0) throw NotRepresentable("max_k_square_le: x must be positive");
    if (bound < 0) throw NotRepresentable("max_k_square_le: bound must be >= 0");
    // k^2 <= bound/x with k integer: k = isqrt(floor(bound/x)).
    return isqrt(floor_rat(bound / x));
}

Int triangle_m_limit(const SlopeValue& alpha, const Rat& R) {
    if (R < 0) throw NotRepresentable("triangle_m_limit: R must be >= 0");
    if (alpha.is_rational()) {
        // R / sqrt(1 + (p/q)^2) = q R / sqrt(p^2 + q^2).
        const Int& p = alpha.rat().get_num();
        const Int& q = alpha.rat().get_den();
        return floor_div_sqrt(q * R.get_num(), R.get_den(), p * p + q * q);
    }
    const QuadVal& a = alpha.quad();
    QuadVal one_plus_sq = quad_add_rat(quad_mul(a, a), Rat(1));
    return max_k_square_le(one_plus_sq, R * R);
}

}  // namespace sectorcount
