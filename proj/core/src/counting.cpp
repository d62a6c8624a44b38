#include "sectorcount/counting.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>

#include "sectorcount/errors.hpp"
#include "sectorcount/floor_exact.hpp"

// Counting kernels.
//
// All three counters share the same point set:
//
//     S(alpha, eps, R) = #{ (m, n) : m >= 1,
//                           m(alpha - eps) < n < m(alpha + eps),
//                           m^2 + n^2 <= R^2 }.
//
// The triangle variant Delta replaces the disk by m <= R / sqrt(1 + alpha^2).
// The fast counters rewrite the strip condition through d = n q - m p for a
// rational approximation p/q of alpha (the slope itself when alpha is
// rational, a continued-fraction convergent otherwise): for fixed d, the
// admissible m form one residue class modulo q inside an interval, so each
// class costs two exact floors instead of a row-by-row scan. The boundary
// band where the disk bites, m between R/sqrt(1+(alpha+eps)^2) and
// R/sqrt(1+(alpha-eps)^2) with about eps*R rows, is enumerated exactly.

namespace sectorcount {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Largest integer strictly below x and smallest strictly above.
Int strict_below(const Rat& x) {
    return ceil_rat(x) - 1;
}

Int strict_above(const Rat& x) {
    return floor_rat(x) + 1;
}

Int nonneg(const Int& x) {
    return x > 0 ? x : Int(0);
}

// Disk row bound: floor(sqrt(R^2 - m^2)) for m <= R, computed from
// W = Rnum^2 - m^2 Rden^2 as floor(isqrt(W) / Rden).
Int disk_n_max(const Rat& R, const Int& m) {
    Int w = R.get_num() * R.get_num() - m * m * R.get_den() * R.get_den();
    return floor_div(isqrt(w), R.get_den());
}

struct SlopeStrip {
    // Open-interval integer bounds of (m(alpha-eps), m(alpha+eps)).
    virtual Int row_low(const Int& m) const = 0;   // smallest admissible n
    virtual Int row_high(const Int& m) const = 0;  // largest admissible n
    virtual ~SlopeStrip() = default;
};

struct RationalStrip final : SlopeStrip {
    Rat lo_slope, hi_slope;
    RationalStrip(const Rat& alpha, const Rat& eps)
        : lo_slope(alpha - eps), hi_slope(alpha + eps) {}
    Int row_low(const Int& m) const override { return strict_above(Rat(m) * lo_slope); }
    Int row_high(const Int& m) const override { return strict_below(Rat(m) * hi_slope); }
};

struct QuadStrip final : SlopeStrip {
    QuadVal lo_slope, hi_slope;  // irrational, so rows have no boundary cases
    QuadStrip(const QuadVal& alpha, const Rat& eps)
        : lo_slope(quad_sub_rat(alpha, eps)), hi_slope(quad_add_rat(alpha, eps)) {}
    Int row_low(const Int& m) const override {
        return floor_quad(quad_scale(lo_slope, m)) + 1;
    }
    Int row_high(const Int& m) const override {
        return floor_quad(quad_scale(hi_slope, m));
    }
};

std::unique_ptr<SlopeStrip> make_strip(const SlopeValue& alpha, const Rat& eps) {
    if (alpha.is_rational())
        return std::make_unique<RationalStrip>(alpha.rat(), eps);
    return std::make_unique<QuadStrip>(alpha.quad(), eps);
}

void require_below_ceiling(const Rat& R, const Int& ceiling) {
    if (R > Rat(ceiling))
        throw CeilingExceeded("brute counter: R exceeds the configured ceiling");
}

PartitionBreakdown empty_breakdown(const Int& q, const Int& p_bar) {
    return PartitionBreakdown{0, 0, 0, 0, 0, q, p_bar};
}

// Residue r with m = -d * p_bar (mod q).
Int residue_for_d(const Int& d, const Int& p_bar, const Int& q) {
    Int r;
    Int t = -d * p_bar;
    mpz_mod(r.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
    return r;
}

// Triangle partition for a rational slope p/q over 1 <= m <= M:
//   d = n q - m p,  |d| < m q eps,  m = -d p_bar (mod q).
std::pair<Int, PartitionBreakdown> rational_partition(const Int& p, const Int& q,
                                                      const Rat& eps, const Int& m_max) {
    Int p_bar = mod_inverse(p, q);
    if (m_max <= 0) return {Int(0), empty_breakdown(q, p_bar)};

    PartitionBreakdown br = empty_breakdown(q, p_bar);
    br.delta_zero = floor_div(m_max, q);

    // |d| < m q eps <= M q eps, so |d| ranges to the largest integer strictly
    // below M q eps.
    Rat t = Rat(m_max) * Rat(q) * eps;
    Int d_abs_max = nonneg(strict_below(t));
    br.d_min = -d_abs_max;
    br.d_max = d_abs_max;

    for (Int d = 1; d <= d_abs_max; ++d) {
        // |d| < m q eps  <=>  m > d / (q eps); shared by +d and -d.
        Int m_lo = strict_above(make_rat(d, 1) / (Rat(q) * eps));
        br.delta_plus += count_in_ap(m_lo, m_max, residue_for_d(d, p_bar, q), q);
        br.delta_minus += count_in_ap(m_lo, m_max, residue_for_d(-d, p_bar, q), q);
    }
    return {br.total(), br};
}

// Triangle partition for an irrational slope over 1 <= m <= M, through the
// convergent p/q with delta = alpha - p/q, |delta| < eps/2:
//   m q (delta - eps) < d < m q (delta + eps).
// Positive d needs m > d / (q(delta+eps)); negative d needs
// m > |d| / (q(eps-delta)); d = 0 is exactly the multiples of q.
std::pair<Int, PartitionBreakdown> quad_partition(const QuadVal& alpha, const Rat& eps,
                                                  const Convergent& conv, const Int& m_max) {
    Int p_bar = mod_inverse(conv.p, conv.q);
    const Int& q = conv.q;
    if (m_max <= 0) return {Int(0), empty_breakdown(q, p_bar)};

    QuadVal delta = quad_sub_rat(alpha, make_rat(conv.p, conv.q));
    QuadVal w_plus = quad_scale(quad_add_rat(delta, eps), q);             // q(delta+eps) > 0
    QuadVal w_minus = quad_scale(quad_sub_rat(delta, eps), Int(-1));      // eps - delta > 0
    w_minus = quad_scale(w_minus, q);                                     // q(eps-delta)

    PartitionBreakdown br = empty_breakdown(q, p_bar);
    br.delta_zero = floor_div(m_max, q);

    // d bounds: both M q (delta+eps) and M q (eps-delta) are irrational, so
    // their floors give the exact strict windows.
    Int d_pos_max = nonneg(floor_quad(quad_scale(w_plus, m_max)));
    Int d_neg_max = nonneg(floor_quad(quad_scale(w_minus, m_max)));
    br.d_min = -d_neg_max;
    br.d_max = d_pos_max;

    for (Int d = 1; d <= d_pos_max; ++d) {
        Int m_lo = floor_quad(rat_div_quad(Rat(d), w_plus)) + 1;
        br.delta_plus += count_in_ap(m_lo, m_max, residue_for_d(d, p_bar, q), q);
    }
    for (Int d = 1; d <= d_neg_max; ++d) {
        Int m_lo = floor_quad(rat_div_quad(Rat(d), w_minus)) + 1;
        br.delta_minus += count_in_ap(m_lo, m_max, residue_for_d(-d, p_bar, q), q);
    }
    return {br.total(), br};
}

// m-limit where the disk is provably inactive/active: floor of
// R / sqrt(1 + slope^2) for slope = alpha +- eps.
Int shifted_m_limit(const SlopeValue& alpha, const Rat& shift, const Rat& R) {
    if (alpha.is_rational()) {
        Rat s = alpha.rat() + shift;
        return max_k_square_le(Rat(1) + s * s, R * R);
    }
    QuadVal s = quad_add_rat(alpha.quad(), shift);
    return max_k_square_le(quad_add_rat(quad_mul(s, s), Rat(1)), R * R);
}

bool above_eps(const SlopeValue& alpha, const Rat& eps) {
    return alpha.compare_to_rational(eps) == Ordering::Greater;
}

// |alpha - p/q| < eps/2, decided exactly.
bool close_enough(const SlopeValue& alpha, const Int& p, const Int& q, const Rat& eps) {
    Rat center = make_rat(p, q);
    Rat half = eps / 2;
    return alpha.compare_to_rational(center + half) == Ordering::Less &&
           alpha.compare_to_rational(center - half) == Ordering::Greater;
}

}  // namespace

SectorQuery::SectorQuery(SlopeValue a, Rat eps, Rat radius)
    : alpha(std::move(a)), epsilon(std::move(eps)), R(std::move(radius)) {
    if (epsilon <= 0) throw std::invalid_argument("sector query: epsilon must be positive");
    if (R < 0) throw std::invalid_argument("sector query: R must be >= 0");
    // Sectors reaching the y-axis are out of the model: require eps < 1 + |alpha|.
    if (epsilon >= 1) {
        Rat t = epsilon - 1;
        bool wide_enough = alpha.compare_to_rational(t) == Ordering::Greater ||
                           alpha.compare_to_rational(-t) == Ordering::Less;
        if (!wide_enough)
            throw std::invalid_argument("sector query: eps >= 1 + |alpha| is not supported");
    }
}

Interval SectorQuery::phi(int bits) const {
    return atan_enclosure(alpha.enclosure(bits), bits);
}

Interval SectorQuery::half_angle(int bits) const {
    Interval a = alpha.enclosure(bits);
    Interval upper = atan_enclosure(a + epsilon, bits);
    Interval lower = atan_enclosure(a - epsilon, bits);
    return (upper - lower) * Rat(1, 2);
}

const char* method_name(CountMethod m) {
    switch (m) {
        case CountMethod::Brute: return "brute";
        case CountMethod::FastConvergent: return "fast-convergent";
        case CountMethod::FastRational: return "fast-rational";
    }
    return "unknown";
}

CountReport count_sector_brute(const SectorQuery& query, const Int& ceiling) {
    require_below_ceiling(query.R, ceiling);
    auto start = Clock::now();

    CountReport report;
    report.method = CountMethod::Brute;
    report.S = 0;
    report.Delta = 0;

    Int m_disk_max = floor_rat(query.R);
    Int m_tri_max = triangle_m_limit(query.alpha, query.R);
    auto strip = make_strip(query.alpha, query.epsilon);

    for (Int m = 1; m <= m_disk_max; ++m) {
        Int n_lo = strip->row_low(m);
        Int n_hi = strip->row_high(m);
        if (m <= m_tri_max) report.Delta += nonneg(n_hi - n_lo + 1);
        Int n_cap = disk_n_max(query.R, m);
        Int lo = n_lo < -n_cap ? -n_cap : n_lo;
        Int hi = n_hi > n_cap ? n_cap : n_hi;
        report.S += nonneg(hi - lo + 1);
    }
    report.band_correction = report.S - report.Delta;
    report.ms = elapsed_ms(start);
    return report;
}

Int count_triangle_brute(const SectorQuery& query, const Int& ceiling) {
    require_below_ceiling(query.R, ceiling);
    Int m_max = triangle_m_limit(query.alpha, query.R);
    auto strip = make_strip(query.alpha, query.epsilon);
    Int total = 0;
    for (Int m = 1; m <= m_max; ++m)
        total += nonneg(strip->row_high(m) - strip->row_low(m) + 1);
    return total;
}

std::pair<Int, PartitionBreakdown> count_triangle_fast(const SectorQuery& query,
                                                       const Convergent& conv) {
    if (query.alpha.is_rational())
        throw PreconditionViolated("count_triangle_fast: slope must be irrational");
    if (!close_enough(query.alpha, conv.p, conv.q, query.epsilon))
        throw PreconditionViolated("count_triangle_fast: convergent needs |delta| < eps/2");
    if (!above_eps(query.alpha, query.epsilon))
        throw PreconditionViolated("count_triangle_fast: needs alpha - eps > 0");
    Int m_max = triangle_m_limit(query.alpha, query.R);
    return quad_partition(query.alpha.quad(), query.epsilon, conv, m_max);
}

std::pair<Int, PartitionBreakdown> count_rational_fast(const SectorQuery& query) {
    if (!query.alpha.is_rational())
        throw PreconditionViolated("count_rational_fast: slope must be rational");
    const Int& p = query.alpha.rat().get_num();
    const Int& q = query.alpha.rat().get_den();
    Int m_max = triangle_m_limit(query.alpha, query.R);
    return rational_partition(p, q, query.epsilon, m_max);
}

namespace {

CountReport fallback_to_brute(const SectorQuery& query, const Int& ceiling,
                              const char* reason) {
    if (query.R <= Rat(ceiling)) return count_sector_brute(query, ceiling);
    throw FallbackImpossible(std::string("count_sector_fast: ") + reason +
                             ", and R exceeds the brute ceiling");
}

}  // namespace

CountReport count_sector_fast(const SectorQuery& query, const Int& ceiling) {
    auto start = Clock::now();

    if (query.R == 0) {
        CountReport r;
        r.S = 0;
        r.Delta = 0;
        r.band_correction = 0;
        r.method = CountMethod::Brute;
        r.ms = elapsed_ms(start);
        return r;
    }

    // The band argument needs every admissible n positive: alpha - eps > 0.
    if (!above_eps(query.alpha, query.epsilon))
        return fallback_to_brute(query, ceiling, "alpha - eps <= 0");

    Int m_tri = triangle_m_limit(query.alpha, query.R);
    Int m_full = shifted_m_limit(query.alpha, query.epsilon, query.R);    // disk inactive
    Int m_band_end = shifted_m_limit(query.alpha, -query.epsilon, query.R);  // last row

    CountReport report;
    Int s_no_disk;

    if (query.alpha.is_rational()) {
        const Int& p = query.alpha.rat().get_num();
        const Int& q = query.alpha.rat().get_den();
        auto [delta_count, br] = rational_partition(p, q, query.epsilon, m_tri);
        report.Delta = delta_count;
        report.breakdown = br;
        s_no_disk = rational_partition(p, q, query.epsilon, m_full).first;
        report.method = CountMethod::FastRational;
    } else {
        ConvergentSelection sel;
        try {
            sel = select_convergent(query.alpha, query.epsilon, SelectionMode::ErrorOptimal,
                                    query.R);
        } catch (const NoAdmissibleConvergent&) {
            return fallback_to_brute(query, ceiling, "no admissible convergent");
        }
        auto [delta_count, br] =
            quad_partition(query.alpha.quad(), query.epsilon, sel.chosen, m_tri);
        report.Delta = delta_count;
        report.breakdown = br;
        s_no_disk =
            quad_partition(query.alpha.quad(), query.epsilon, sel.chosen, m_full).first;
        report.method = CountMethod::FastConvergent;
    }

    // Boundary band: the disk can only act on rows m_full < m <= m_band_end,
    // and alpha - eps > 0 makes every admissible n positive there.
    Int band = 0;
    auto strip = make_strip(query.alpha, query.epsilon);
    for (Int m = m_full + 1; m <= m_band_end; ++m) {
        Int n_lo = strip->row_low(m);
        Int n_hi = strip->row_high(m);
        Int n_cap = disk_n_max(query.R, m);
        Int hi = n_hi > n_cap ? n_cap : n_hi;
        band += nonneg(hi - n_lo + 1);
    }

    report.S = s_no_disk + band;
    report.band_correction = report.S - report.Delta;
    report.m_full = m_full;
    report.m_band_end = m_band_end;
    report.ms = elapsed_ms(start);
    return report;
}

EmptinessReport verify_empty(const SlopeValue& alpha, const Rat& c0, const Rat& lambda,
                             const std::vector<Int>& radii, const Int& ceiling) {
    if (alpha.is_rational())
        throw PreconditionViolated("verify_empty: slope must be irrational");
    EmptinessReport report;
    for (const Int& r : radii) {
        Rat eps = dyadic_power_schedule(c0, Rat(r), lambda);
        SectorQuery query(alpha, eps, Rat(r));
        CountReport count = count_sector_fast(query, ceiling);
        report.rows.push_back({r, eps, count.S});
        if (count.S > 0) {
            if (!report.largest_nonempty || r > *report.largest_nonempty)
                report.largest_nonempty = r;
        }
    }
    return report;
}

}  // namespace sectorcount
