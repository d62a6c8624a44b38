#pragma once

#include <optional>
#include <string>

#include "sectorcount/counting.hpp"
#include "sectorcount/enclosure.hpp"

namespace sectorcount {

// Enclosure of the exact sector area (R^2/2)(arctan(alpha+eps) - arctan(alpha-eps)),
// refined until the relative width is at most 2^-64.
Interval sector_area(const SectorQuery& query, int start_bits = 0);

// eps R^2 / (1 + alpha^2): exact (point interval) for rational slopes, an
// enclosure at `bits` otherwise.
Interval main_term(const SectorQuery& query, int bits = 0);

// Closed-form pieces for a rational slope p/q:
//   main     = eps q^2 R^2 / (p^2 + q^2)
//   frac_arg = x = eps q^2 R / sqrt(p^2 + q^2)
//   beta     = {x}(1 - {x}) / q^2          (in [0, 1/(4 q^2)])
//   gamma    = eps q^2 R / (p^2+q^2) + beta/(eps R)   (eps ~ 1/R sweeps)
// When p^2 + q^2 is a perfect square the argument x is rational and may be an
// exact integer; the {x} = 0 branch is then taken deterministically.
struct RationalClosedForm {
    Rat main;
    Interval beta;
    std::optional<Rat> beta_exact;  // present when p^2 + q^2 is a perfect square
    Interval frac_arg;
    Int floor_frac_arg;
    bool line_only = false;  // eps q^2 R / sqrt(p^2+q^2) < 1
    std::optional<Interval> gamma;
};

RationalClosedForm rational_closed_form(const Int& p, const Int& q, const Rat& eps,
                                        const Rat& R, int bits = 0,
                                        bool compute_gamma = false);

enum class Regime { Slow, Main, RationalLineOnly, CriticalRational, Gap, VeryQuick };

const char* regime_name(Regime r);

// Slope class for regime classification: rational, or irrational of finite
// type eta (>= 1). Quadratic irrationals are badly approximable, eta = 1.
struct AlphaKind {
    bool rational = false;
    Rat eta = Rat(1);

    static AlphaKind rational_kind() { return {true, Rat(1)}; }
    static AlphaKind irrational(const Rat& eta) { return {false, eta}; }
};

struct RegimeVerdict {
    Regime regime = Regime::Slow;
    std::optional<Rat> error_exponent;  // |S - prediction| = O(R^exponent)
    bool beta_correction = false;       // rational slopes, 2/3 < lambda < 1
    std::string notes;
};

// Regime table for the schedule eps = R^-lambda. Piecewise in lambda with
// breakpoints {1/2, (1+eta)/(1+2eta), 1+1/eta, 1+eta} for irrational slopes
// and {1/2, 2/3, 1} for rational ones.
RegimeVerdict classify_regime(const AlphaKind& kind, const Rat& lambda);

// Model prediction for S under the verdict's regime. Throws GapRegime when no
// asymptotic is available. `error_form` (if non-null) receives a description
// of the error term the prediction carries.
Interval predicted_count(const SectorQuery& query, const RegimeVerdict& verdict,
                         int bits = 0, std::string* error_form = nullptr);

}  // namespace sectorcount
