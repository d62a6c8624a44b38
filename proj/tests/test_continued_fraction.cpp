#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sectorcount/continued_fraction.hpp"
#include "sectorcount/errors.hpp"

using namespace sectorcount;

namespace {

SlopeValue sqrt2() { return SlopeValue::parse("(0+1*sqrt(2))/1"); }
SlopeValue phi() { return SlopeValue::parse("(1+1*sqrt(5))/2"); }

Rat fold_back(const std::vector<Int>& as) {
    Rat value(as.back());
    for (size_t i = as.size() - 1; i-- > 0;) value = Rat(as[i]) + 1 / value;
    return value;
}

// |alpha - p/q| < t, exactly.
bool abs_delta_less(const SlopeValue& alpha, const Int& p, const Int& q, const Rat& t) {
    Rat center = make_rat(p, q);
    return alpha.compare_to_rational(center + t) == Ordering::Less &&
           alpha.compare_to_rational(center - t) == Ordering::Greater;
}

SlopeValue random_quadratic(std::mt19937_64& rng) {
    const long nonsquare[] = {2, 3, 5, 6, 7, 10, 11, 13};
    Int a(static_cast<long>(rng() % 21) - 10);
    Int b(static_cast<long>(rng() % 9) - 4);
    if (b == 0) b = 1;
    Int c(1 + static_cast<long>(rng() % 12));
    return SlopeValue::quadratic(a, b, c, Int(nonsquare[rng() % 8]));
}

}  // namespace

TEST_CASE("expansion examples") {
    auto q75 = cf_expand(SlopeValue::parse("7/5"), 5);
    REQUIRE(q75.size() == 3);
    CHECK(q75[0] == 1);
    CHECK(q75[1] == 2);
    CHECK(q75[2] == 2);

    auto qphi = cf_expand(phi(), 6);
    REQUIRE(qphi.size() == 7);
    for (const Int& a : qphi) CHECK(a == 1);

    auto qs2 = cf_expand(sqrt2(), 4);
    REQUIRE(qs2.size() == 5);
    CHECK(qs2[0] == 1);
    for (size_t i = 1; i < qs2.size(); ++i) CHECK(qs2[i] == 2);

    // sqrt(3) = [1; 1, 2, 1, 2, ...]
    auto qs3 = cf_expand(SlopeValue::parse("(0+1*sqrt(3))/1"), 4);
    CHECK(qs3[0] == 1);
    CHECK(qs3[1] == 1);
    CHECK(qs3[2] == 2);
    CHECK(qs3[3] == 1);
    CHECK(qs3[4] == 2);
}

TEST_CASE("rational expansions fold back to the input") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Int p(static_cast<long>(rng() % 4001) - 2000);
        Int q(1 + static_cast<long>(rng() % 999));
        Rat r = make_rat(p, q);
        auto as = cf_expand(SlopeValue::rational(r), 100);
        CHECK(fold_back(as) == r);
        // Canonical form: final quotient >= 2 when the expansion has length > 1.
        if (as.size() > 1) CHECK(as.back() >= 2);
    }
}

TEST_CASE("convergent examples and determinant identity") {
    ConvergentList cs = convergents(phi(), 4);
    REQUIRE(cs.items.size() == 5);
    const long expect_p[] = {1, 2, 3, 5, 8};
    const long expect_q[] = {1, 1, 2, 3, 5};
    for (int i = 0; i < 5; ++i) {
        CHECK(cs.items[i].p == expect_p[i]);
        CHECK(cs.items[i].q == expect_q[i]);
    }

    ConvergentList c2 = convergents(sqrt2(), 3);
    REQUIRE(c2.items.size() == 4);
    const long e2p[] = {1, 3, 7, 17};
    const long e2q[] = {1, 2, 5, 12};
    for (int i = 0; i < 4; ++i) {
        CHECK(c2.items[i].p == e2p[i]);
        CHECK(c2.items[i].q == e2q[i]);
    }

    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        SlopeValue s = random_quadratic(rng);
        ConvergentList list = convergents(s, 12);
        for (size_t i = 1; i < list.items.size(); ++i) {
            Int det = list.items[i].p * list.items[i - 1].q -
                      list.items[i - 1].p * list.items[i].q;
            CHECK(det == ((i - 1) % 2 == 0 ? 1 : -1));  // (-1)^(i-1)
        }
    }
}

TEST_CASE("two-sided delta bounds and certified enclosures") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        SlopeValue s = random_quadratic(rng);
        ConvergentList list = convergents(s, 10);
        for (size_t i = 0; i + 1 < list.items.size(); ++i) {
            const Convergent& c = list.items[i];
            const Convergent& next = list.items[i + 1];
            // 1/(q_i (q_i + q_{i+1})) < |delta_i| < 1/(q_i q_{i+1})
            Rat upper = make_rat(1, c.q * next.q);
            Rat lower = make_rat(1, c.q * (c.q + next.q));
            CHECK(abs_delta_less(s, c.p, c.q, upper));
            CHECK(!abs_delta_less(s, c.p, c.q, lower));

            // delta strictly inside delta_bound, which excludes zero.
            Rat center = make_rat(c.p, c.q);
            CHECK(s.compare_to_rational(center + c.delta_bound.lo) == Ordering::Greater);
            CHECK(s.compare_to_rational(center + c.delta_bound.hi) == Ordering::Less);
            CHECK(sgn(c.delta_bound.lo) == sgn(c.delta_bound.hi));
            CHECK(c.delta_bound.lo != 0);
            CHECK(c.delta_bound.width() <= upper);
            CHECK(c.delta_sign == (i % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("rational convergents exhaust with exact deltas") {
    ConvergentList list = convergents(SlopeValue::parse("7/5"), 10);
    CHECK(list.exhausted);
    REQUIRE(list.items.size() == 3);
    CHECK(list.items.back().p == 7);
    CHECK(list.items.back().q == 5);
    CHECK(list.items.back().delta_sign == 0);
    CHECK(list.items.back().delta_bound.is_point());
    CHECK(list.items[1].delta_bound.lo == Rat(7, 5) - Rat(3, 2));
}

TEST_CASE("selection: first admissible convergent") {
    auto sel = select_convergent(phi(), Rat(1, 100), SelectionMode::FirstAdmissible);
    CHECK(sel.chosen.p == 21);
    CHECK(sel.chosen.q == 13);
    CHECK(sel.X == 20);  // next denominator is 21

    // 13/8 is the previous convergent and is not admissible at eps = 1/100.
    CHECK(!abs_delta_less(phi(), Int(13), Int(8), Rat(1, 200)));
    CHECK(abs_delta_less(phi(), Int(21), Int(13), Rat(1, 200)));

    auto sel2 = select_convergent(sqrt2(), Rat(1, 2), SelectionMode::FirstAdmissible);
    CHECK(sel2.chosen.p == 3);
    CHECK(sel2.chosen.q == 2);

    CHECK_THROWS_AS(
        select_convergent(sqrt2(), Rat(1, 1000), SelectionMode::FirstAdmissible, Rat(2)),
        NoAdmissibleConvergent);
    CHECK_THROWS_AS(
        select_convergent(SlopeValue::parse("3/4"), Rat(1, 10), SelectionMode::FirstAdmissible),
        PreconditionViolated);
}

TEST_CASE("selection: guarantee and optimality") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 60; ++t) {
        SlopeValue s = random_quadratic(rng);
        unsigned k = 3 + rng() % 14;
        Rat eps = make_rat(Int(1 + static_cast<long>(rng() % 7)), pow2(k));
        if (eps >= 1) continue;
        Rat radius(static_cast<long>(100 + rng() % 100000));
        ConvergentSelection sel;
        try {
            sel = select_convergent(s, eps, SelectionMode::ErrorOptimal, radius);
        } catch (const NoAdmissibleConvergent&) {
            continue;
        }
        CHECK(abs_delta_less(s, sel.chosen.p, sel.chosen.q, eps / 2));
        CHECK(Rat(sel.chosen.q) < radius);
        CHECK(Rat(sel.chosen.q) <= Rat(sel.X));

        // Brute-check optimality of the bound R/q + 1/(eps q^2) + eps q R over
        // all admissible convergents below the cutoff.
        Rat qq(sel.chosen.q);
        Rat best = radius / qq + 1 / (eps * qq * qq) + eps * qq * radius;
        ConvergentList list = convergents(s, 40);
        for (const Convergent& c : list.items) {
            if (Rat(c.q) >= radius) break;
            if (!abs_delta_less(s, c.p, c.q, eps / 2)) continue;
            Rat cq(c.q);
            Rat cost = radius / cq + 1 / (eps * cq * cq) + eps * cq * radius;
            CHECK(best <= cost);
        }
    }
}

TEST_CASE("type estimation") {
    TypeEstimate tphi = estimate_type(phi(), 20);
    CHECK(std::abs(tphi.eta_hat.get_d() - 1.0) <= 0.05);
    CHECK(!tphi.per_step.empty());

    TypeEstimate ts2 = estimate_type(sqrt2(), 20);
    CHECK(std::abs(ts2.eta_hat.get_d() - 1.0) <= 0.05);

    CHECK_THROWS_AS(estimate_type(SlopeValue::parse("7/5"), 10), PreconditionViolated);
    CHECK_THROWS_AS(estimate_type(phi(), 2), std::invalid_argument);

    // Dirichlet: eta >= 1 for every irrational; the estimator clamps to it.
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
        SlopeValue s = random_quadratic(rng);
        TypeEstimate est = estimate_type(s, 18);
        CHECK(est.eta_hat >= 1);
        // Quadratic irrationals are badly approximable: eta is exactly 1 and
        // the finite-depth estimate stays near it.
        CHECK(est.eta_hat.get_d() <= 1.25);
    }
}
