#include "sectorcount/continued_fraction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sectorcount/errors.hpp"

namespace sectorcount {

namespace {

// Partial-quotient generator for a rational slope (Euclidean algorithm).
struct RationalCF {
    Int num, den;  // den > 0
    bool done = false;

    explicit RationalCF(const Rat& r) : num(r.get_num()), den(r.get_den()) {}

    Int next() {
        Int a = floor_div(num, den);
        Int rem = num - a * den;
        num = den;
        den = rem;
        if (den == 0) done = true;
        return a;
    }
};

// Exact quotient generator for a quadratic surd, tracked as (P + sqrt(N))/Q
// with the invariant Q | (N - P^2). N is non-square, so the expansion never
// terminates and every intermediate floor is unambiguous.
struct SurdCF {
    Int P, Q, N;

    explicit SurdCF(const QuadVal& v) {
        // (a + b*sqrt(d))/c = (P + sqrt(b^2 d))/Q with the sign of b folded in.
        if (v.b > 0) {
            P = v.a;
            Q = v.c;
        } else {
            P = -v.a;
            Q = -v.c;
        }
        N = v.b * v.b * v.d;
        if ((N - P * P) % Q != 0) {
            Int q_abs = abs(Q);
            P *= q_abs;
            N *= Q * Q;
            Q *= q_abs;
        }
    }

    Int next() {
        // floor((P + sqrt(N))/Q): the numerator lies in the open unit interval
        // (P + s, P + s + 1) with s = floor(sqrt(N)), hence the floor only
        // depends on the integer endpoint.
        Int s = isqrt(N);
        Int a;
        if (Q > 0) {
            a = floor_div(P + s, Q);
        } else {
            a = -floor_div(P + s, -Q) - 1;
        }
        Int P2 = a * Q - P;
        Int Q2 = (N - P2 * P2) / Q;
        P = P2;
        Q = Q2;
        return a;
    }
};

std::vector<Int> quotients(const SlopeValue& s, int count) {
    std::vector<Int> out;
    if (count <= 0) return out;
    out.reserve(static_cast<size_t>(count));
    if (s.is_rational()) {
        RationalCF cf(s.rat());
        while (!cf.done && static_cast<int>(out.size()) < count) out.push_back(cf.next());
    } else {
        SurdCF cf(s.quad());
        while (static_cast<int>(out.size()) < count) out.push_back(cf.next());
    }
    return out;
}

struct PQ {
    Int p, q;
};

std::vector<PQ> convergent_frames(const std::vector<Int>& as) {
    std::vector<PQ> out;
    out.reserve(as.size());
    Int p_prev2 = 0, p_prev1 = 1;
    Int q_prev2 = 1, q_prev1 = 0;
    for (const Int& a : as) {
        Int p = a * p_prev1 + p_prev2;
        Int q = a * q_prev1 + q_prev2;
        out.push_back({p, q});
        p_prev2 = p_prev1;
        p_prev1 = p;
        q_prev2 = q_prev1;
        q_prev1 = q;
    }
    return out;
}

}  // namespace

std::vector<Int> cf_expand(const SlopeValue& s, int k) {
    if (k < 0) throw std::invalid_argument("cf_expand: k must be >= 0");
    return quotients(s, k + 1);
}

ConvergentList convergents(const SlopeValue& s, int k) {
    if (k < 0) throw std::invalid_argument("convergents: k must be >= 0");
    ConvergentList out;

    if (s.is_rational()) {
        std::vector<Int> as = quotients(s, k + 1);
        out.exhausted = static_cast<int>(as.size()) < k + 1;
        std::vector<PQ> pq = convergent_frames(as);
        for (size_t i = 0; i < pq.size(); ++i) {
            Convergent c;
            c.index = static_cast<int>(i);
            c.p = pq[i].p;
            c.q = pq[i].q;
            Rat delta = s.rat() - make_rat(c.p, c.q);
            c.delta_sign = sgn(delta);
            c.delta_bound = Interval(delta);
            out.items.push_back(std::move(c));
        }
        return out;
    }

    // Two extra convergents bracket delta_i: alpha lies strictly between
    // consecutive convergents, so delta_i is strictly between
    // (p_{i+1}/q_{i+1} - p_i/q_i) and (p_{i+2}/q_{i+2} - p_i/q_i).
    std::vector<Int> as = quotients(s, k + 3);
    std::vector<PQ> pq = convergent_frames(as);
    for (int i = 0; i <= k; ++i) {
        Convergent c;
        c.index = i;
        c.p = pq[static_cast<size_t>(i)].p;
        c.q = pq[static_cast<size_t>(i)].q;
        c.delta_sign = (i % 2 == 0) ? 1 : -1;
        Rat ci = make_rat(c.p, c.q);
        Rat d1 = make_rat(pq[static_cast<size_t>(i) + 1].p, pq[static_cast<size_t>(i) + 1].q) - ci;
        Rat d2 = make_rat(pq[static_cast<size_t>(i) + 2].p, pq[static_cast<size_t>(i) + 2].q) - ci;
        c.delta_bound = d1 < d2 ? Interval(d1, d2) : Interval(d2, d1);
        out.items.push_back(std::move(c));
    }
    return out;
}

namespace {

// |alpha - p/q| < eps/2, decided exactly.
bool delta_admissible(const SlopeValue& s, const Int& p, const Int& q, const Rat& eps) {
    Rat center = make_rat(p, q);
    Rat half = eps / 2;
    return s.compare_to_rational(center + half) == Ordering::Less &&
           s.compare_to_rational(center - half) == Ordering::Greater;
}

}  // namespace

ConvergentSelection select_convergent(const SlopeValue& s, const Rat& eps,
                                      SelectionMode mode, const std::optional<Rat>& R,
                                      const Rat& eta) {
    if (s.is_rational())
        throw PreconditionViolated("select_convergent: slope must be irrational");
    if (eps <= 0 || eps >= 1)
        throw PreconditionViolated("select_convergent: need 0 < eps < 1");
    if (eta < 1) throw PreconditionViolated("select_convergent: eta must be >= 1");
    if (mode == SelectionMode::ErrorOptimal && !R)
        throw PreconditionViolated("select_convergent: ErrorOptimal mode requires R");
    if (R && *R <= 0) throw PreconditionViolated("select_convergent: R must be positive");

    SurdCF cf(s.quad());
    Int p_prev2 = 0, p_prev1 = 1;
    Int q_prev2 = 1, q_prev1 = 0;

    std::optional<int> best_index;
    Int best_p, best_q;
    Rat best_cost;

    // Denominators grow at least like Fibonacci numbers, so any real cutoff
    // is reached in O(log R) steps; the cap only guards pathological use.
    constexpr int kMaxIterations = 1 << 20;
    for (int i = 0; i < kMaxIterations; ++i) {
        Int a = cf.next();
        Int p = a * p_prev1 + p_prev2;
        Int q = a * q_prev1 + q_prev2;
        p_prev2 = p_prev1;
        p_prev1 = p;
        q_prev2 = q_prev1;
        q_prev1 = q;

        if (R && Rat(q) >= *R) break;

        if (delta_admissible(s, p, q, eps)) {
            if (mode == SelectionMode::FirstAdmissible) {
                best_index = i;
                best_p = p;
                best_q = q;
                break;
            }
            Rat rq = Rat(q);
            Rat cost = *R / rq + 1 / (eps * rq * rq) + eps * rq * *R;
            if (!best_index || cost < best_cost) {
                best_index = i;
                best_p = p;
                best_q = q;
                best_cost = cost;
            }
        }
    }

    if (!best_index)
        throw NoAdmissibleConvergent(
            "select_convergent: no convergent with q < R has |delta| < eps/2");

    ConvergentList list = convergents(s, *best_index);
    ConvergentSelection sel;
    sel.chosen = list.items.back();
    // The next denominator defines the cutoff X with q <= X < q_next.
    ConvergentList next = convergents(s, *best_index + 1);
    sel.X = next.items.back().q - 1;
    sel.mode = mode;
    sel.eta_used = eta;
    sel.eps_used = eps;

    // Post condition re-verified: |delta| < eps/2.
    if (!delta_admissible(s, sel.chosen.p, sel.chosen.q, eps))
        throw std::logic_error("select_convergent: postcondition failed");
    return sel;
}

TypeEstimate estimate_type(const SlopeValue& s, int depth) {
    if (s.is_rational())
        throw PreconditionViolated("estimate_type: type is defined for irrationals only");
    if (depth < 3) throw std::invalid_argument("estimate_type: depth must be >= 3");

    std::vector<Int> as = quotients(s, depth + 2);
    std::vector<PQ> pq = convergent_frames(as);

    TypeEstimate est;
    est.depth = depth;
    std::vector<std::pair<double, double>> points;  // (log q_i, log q_{i+1})
    for (int i = 0; i <= depth; ++i) {
        const Int& qi = pq[static_cast<size_t>(i)].q;
        const Int& qn = pq[static_cast<size_t>(i) + 1].q;
        if (qi < 2) continue;
        double lx = std::log(qi.get_d());
        double ly = std::log(qn.get_d());
        est.per_step.push_back(ly / lx);
        if (i >= depth / 2) points.emplace_back(lx, ly);
    }
    // Deep-window regression of log q_{i+1} on log q_i separates the growth
    // exponent from the multiplicative constant far better than any single
    // ratio at reachable depths.
    if (points.size() < 2) {
        est.eta_hat = Rat(1);
        return est;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(points.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    // Dirichlet floor: every irrational has type >= 1, so regression noise
    // below 1 carries no information and is clamped.
    if (slope < 1.0) slope = 1.0;
    Rat eta_hat;
    mpq_set_d(eta_hat.get_mpq_t(), slope);
    eta_hat.canonicalize();
    est.eta_hat = eta_hat;
    return est;
}

}  // namespace sectorcount
