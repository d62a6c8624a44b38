#include "sectorcount/asymptotics.hpp"

#include <stdexcept>

#include "sectorcount/errors.hpp"
#include "sectorcount/floor_exact.hpp"

namespace sectorcount {

namespace {

constexpr int kMaxBits = 1 << 22;

Rat rel_tolerance() {
    static const Rat tol = make_rat(1, pow2(64));
    return tol;
}

Interval slope_pm_eps(const SlopeValue& alpha, const Rat& eps, int bits, int sign) {
    Interval a = alpha.enclosure(bits);
    return sign > 0 ? a + eps : a - eps;
}

}  // namespace

Interval sector_area(const SectorQuery& query, int start_bits) {
    if (query.R == 0) return Interval(Rat(0));
    int bits = start_bits > 0 ? start_bits : default_precision_bits();
    Rat half_r2 = query.R * query.R / 2;

    for (; bits <= kMaxBits; bits *= 2) {
        Interval upper = atan_enclosure(slope_pm_eps(query.alpha, query.epsilon, bits, +1), bits);
        Interval lower = atan_enclosure(slope_pm_eps(query.alpha, query.epsilon, bits, -1), bits);
        Interval area = (upper - lower) * half_r2;
        // Terminate on relative width <= 2^-64 (area is positive, so a
        // positive lower endpoint certifies the denominator).
        if (area.lo > 0 && area.width() <= area.lo * rel_tolerance()) return area;
    }
    throw std::logic_error("sector_area: enclosure did not converge");
}

Interval main_term(const SectorQuery& query, int bits) {
    if (bits <= 0) bits = default_precision_bits();
    Rat eps_r2 = query.epsilon * query.R * query.R;
    if (query.alpha.is_rational()) {
        const Rat& a = query.alpha.rat();
        return Interval(eps_r2 / (1 + a * a));
    }
    QuadVal denom = quad_add_rat(quad_mul(query.alpha.quad(), query.alpha.quad()), Rat(1));
    QuadVal inv = quad_reciprocal(denom);
    if (inv.is_rational()) return Interval(eps_r2 * inv.to_rat());
    return inv.enclosure(bits) * eps_r2;
}

RationalClosedForm rational_closed_form(const Int& p, const Int& q, const Rat& eps,
                                        const Rat& R, int bits, bool compute_gamma) {
    if (q <= 0) throw std::invalid_argument("rational_closed_form: q must be positive");
    Int g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::invalid_argument("rational_closed_form: p/q must be reduced");
    if (eps <= 0 || R < 0) throw std::invalid_argument("rational_closed_form: bad eps or R");
    if (compute_gamma && R == 0)
        throw std::invalid_argument("rational_closed_form: gamma needs R > 0");
    if (bits <= 0) bits = default_precision_bits();

    Int n = p * p + q * q;
    Rat q2 = Rat(q * q);
    RationalClosedForm out;
    out.main = eps * q2 * R * R / Rat(n);

    // x = eps q^2 R / sqrt(n).
    Rat u = eps * q2 * R;  // x = u / sqrt(n)
    Int w;
    if (is_perfect_square(n, &w)) {
        Rat x = u / Rat(w);
        out.floor_frac_arg = floor_rat(x);
        Rat frac = x - Rat(out.floor_frac_arg);  // exactly 0 on the integer branch
        out.frac_arg = Interval(x);
        Rat beta = frac * (1 - frac) / q2;
        out.beta = Interval(beta);
        out.beta_exact = beta;
        out.line_only = x < 1;
        if (compute_gamma) {
            Rat gamma = eps * q2 * R / Rat(n) + beta / (eps * R);
            out.gamma = Interval(gamma);
        }
        return out;
    }

    // Irrational argument: x = u / sqrt(n) = u sqrt(n) / n as an exact
    // quadratic value.
    out.floor_frac_arg = floor_div_sqrt(u.get_num(), u.get_den(), n);
    QuadVal x = make_quad(Int(0), u.get_num(), u.get_den() * n, n);

    QuadVal frac = quad_sub_rat(x, Rat(out.floor_frac_arg));
    QuadVal one_minus = quad_scale(frac, Rat(-1));
    one_minus = quad_add_rat(one_minus, Rat(1));
    QuadVal beta_val = quad_scale(quad_mul(frac, one_minus), Rat(1) / q2);

    // Refine until the frac-arg enclosure stays inside one unit interval.
    Interval fa = x.enclosure(bits);
    while (fa.lo < Rat(out.floor_frac_arg) || fa.hi >= Rat(out.floor_frac_arg + 1)) {
        bits *= 2;
        if (bits > kMaxBits)
            throw std::logic_error("rational_closed_form: enclosure did not converge");
        fa = x.enclosure(bits);
    }
    out.frac_arg = fa;
    out.beta = beta_val.enclosure(bits);
    out.line_only = out.floor_frac_arg == 0;
    if (compute_gamma) {
        QuadVal gamma_val = quad_add_rat(quad_scale(beta_val, 1 / (eps * R)),
                                         eps * q2 * R / Rat(n));
        out.gamma = gamma_val.enclosure(bits);
    }
    return out;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Slow: return "slow";
        case Regime::Main: return "main";
        case Regime::RationalLineOnly: return "rational-line-only";
        case Regime::CriticalRational: return "critical-rational";
        case Regime::Gap: return "gap";
        case Regime::VeryQuick: return "very-quick";
    }
    return "unknown";
}

RegimeVerdict classify_regime(const AlphaKind& kind, const Rat& lambda) {
    if (lambda < 0) throw std::invalid_argument("classify_regime: lambda must be >= 0");
    RegimeVerdict v;
    const Rat half(1, 2);

    if (kind.rational) {
        const Rat two_thirds(2, 3);
        if (lambda <= half) {
            v.regime = Regime::Slow;
            v.error_exponent = Rat(1);
            v.notes = "S = Area + O(R)";
        } else if (lambda <= two_thirds) {
            v.regime = Regime::Main;
            v.error_exponent = 2 - 2 * lambda;
            v.notes = "S = Area + O(R^(2-2*lambda))";
        } else if (lambda < 1) {
            v.regime = Regime::Main;
            v.error_exponent = 2 - 2 * lambda;
            v.beta_correction = true;
            v.notes = "S = Area + beta*R^lambda + O(R^(2-2*lambda))";
        } else if (lambda == 1) {
            v.regime = Regime::CriticalRational;
            v.notes = "S = gamma*R + O(1) with gamma from the fractional part";
        } else {
            v.regime = Regime::RationalLineOnly;
            v.notes = "S = R/sqrt(p^2+q^2) + O(1); only points on y = alpha*x";
        }
        return v;
    }

    const Rat& eta = kind.eta;
    if (eta < 1) throw std::invalid_argument("classify_regime: eta must be >= 1");
    const Rat mid_break = (1 + eta) / (1 + 2 * eta);
    const Rat gap_lo = 1 + 1 / eta;
    const Rat gap_hi = 1 + eta;

    if (lambda < half) {
        v.regime = Regime::Slow;
        v.error_exponent = Rat(1);
        v.notes = "S = Area + O(R)";
    } else if (lambda < mid_break) {
        v.regime = Regime::Main;
        v.error_exponent = 2 - 2 * lambda;
        v.notes = "S = Area + O(R^(2-2*lambda))";
    } else if (lambda < gap_lo) {
        v.regime = Regime::Main;
        v.error_exponent = 1 - lambda / (1 + eta);
        v.notes = "S = Area + O(R^(1-lambda/(1+eta)))";
    } else if (lambda <= gap_hi) {
        v.regime = Regime::Gap;
        v.notes = "no asymptotic guaranteed for R^-(1+eta) << eps << R^-(1+1/eta)";
    } else {
        v.regime = Regime::VeryQuick;
        v.notes = "S = 0 for all sufficiently large R";
    }
    return v;
}

Interval predicted_count(const SectorQuery& query, const RegimeVerdict& verdict,
                         int bits, std::string* error_form) {
    if (bits <= 0) bits = default_precision_bits();
    auto set_form = [&](const std::string& s) {
        if (error_form) *error_form = s;
    };

    switch (verdict.regime) {
        case Regime::Slow:
        case Regime::Main: {
            if (verdict.beta_correction) {
                if (!query.alpha.is_rational())
                    throw std::invalid_argument("predicted_count: beta correction needs a rational slope");
                const Int& p = query.alpha.rat().get_num();
                const Int& q = query.alpha.rat().get_den();
                RationalClosedForm cf =
                    rational_closed_form(p, q, query.epsilon, query.R, bits);
                set_form("O(R^" + verdict.error_exponent->get_str() + ") after beta/eps correction");
                return cf.beta * (1 / query.epsilon) + Interval(cf.main);
            }
            set_form(verdict.error_exponent
                         ? "O(R^" + verdict.error_exponent->get_str() + ")"
                         : "O(R)");
            return sector_area(query, bits);
        }
        case Regime::RationalLineOnly: {
            if (!query.alpha.is_rational())
                throw std::invalid_argument("predicted_count: line-only regime needs a rational slope");
            const Int& p = query.alpha.rat().get_num();
            const Int& q = query.alpha.rat().get_den();
            Int n = p * p + q * q;
            set_form("O(1)");
            Int w;
            if (is_perfect_square(n, &w)) return Interval(query.R / Rat(w));
            Interval s = sqrt_enclosure(n, bits);
            return {query.R / s.hi, query.R / s.lo};
        }
        case Regime::CriticalRational: {
            if (!query.alpha.is_rational())
                throw std::invalid_argument("predicted_count: critical regime needs a rational slope");
            const Int& p = query.alpha.rat().get_num();
            const Int& q = query.alpha.rat().get_den();
            RationalClosedForm cf =
                rational_closed_form(p, q, query.epsilon, query.R, bits, true);
            set_form("O(1)");
            return *cf.gamma * query.R;
        }
        case Regime::VeryQuick:
            set_form("exactly 0 beyond a finite threshold R0");
            return Interval(Rat(0));
        case Regime::Gap:
            throw GapRegime("predicted_count: no asymptotic is available in the gap regime");
    }
    throw std::logic_error("predicted_count: unhandled regime");
}

}  // namespace sectorcount
