#pragma once

#include <optional>
#include <vector>

#include "sectorcount/enclosure.hpp"
#include "sectorcount/slope.hpp"

namespace sectorcount {

// Partial quotients [a_0; a_1, ..., a_k], at most k+1 of them. Rational
// slopes terminate with the canonical expansion (final quotient >= 2 when
// the length exceeds one).
std::vector<Int> cf_expand(const SlopeValue& s, int k);

// Convergent p/q of a slope alpha, with delta = alpha - p/q.
//
// delta_bound is a certified enclosure of delta built from the two following
// convergents, so its width is 1/(q_{i+1} q_{i+2}) and it excludes zero for
// irrational slopes. For rational slopes it is the exact point [delta, delta].
struct Convergent {
    int index = 0;
    Int p;
    Int q;
    int delta_sign = 0;  // -1, 0 (rational exact hit), +1
    Interval delta_bound;
};

struct ConvergentList {
    std::vector<Convergent> items;
    bool exhausted = false;  // rational expansion ended before k+1 convergents
};

// Convergents 0..k via the standard recurrence
//   p_i = a_i p_{i-1} + p_{i-2},  q_i = a_i q_{i-1} + q_{i-2}.
ConvergentList convergents(const SlopeValue& s, int k);

enum class SelectionMode { FirstAdmissible, ErrorOptimal };

struct ConvergentSelection {
    Convergent chosen;
    Int X;  // cutoff: q of chosen <= X < q of the next convergent
    SelectionMode mode = SelectionMode::FirstAdmissible;
    Rat eta_used;
    Rat eps_used;
    // Existential constants from the type bound; never computed here.
    std::optional<Rat> c_alpha;
    std::optional<Rat> C_const;
};

// Picks a convergent with |delta| < eps/2 (verified by exact comparison).
//
// FirstAdmissible: first such convergent, scanning by index. ErrorOptimal: among
// admissible convergents with q < R, minimize R/q + 1/(eps q^2) + eps q R.
// When R is given, both modes restrict to q < R and throw
// NoAdmissibleConvergent if nothing qualifies. ErrorOptimal requires R.
ConvergentSelection select_convergent(const SlopeValue& s, const Rat& eps,
                                      SelectionMode mode,
                                      const std::optional<Rat>& R = std::nullopt,
                                      const Rat& eta = Rat(1));

// Heuristic irrationality-type estimate from denominator growth: least-squares
// slope of log q_{i+1} against log q_i over the deeper half of the expansion.
// Advisory only; the counting paths never depend on it.
struct TypeEstimate {
    Rat eta_hat;
    int depth = 0;
    std::vector<double> per_step;  // log q_{i+1} / log q_i for q_i >= 2
};

TypeEstimate estimate_type(const SlopeValue& s, int depth);

}  // namespace sectorcount
