#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sectorcount/slope.hpp"

using namespace sectorcount;

TEST_CASE("parsing and canonical form") {
    SlopeValue sqrt2 = SlopeValue::parse("(0+1*sqrt(2))/1");
    CHECK(!sqrt2.is_rational());
    CHECK(sqrt2.str() == "(0+1*sqrt(2))/1");

    // Square factors of the radicand fold into b: 2*sqrt(8)/4 = sqrt(2).
    CHECK(SlopeValue::parse("(0+2*sqrt(8))/4") == sqrt2);

    // Perfect-square radicand demotes to a rational.
    CHECK(SlopeValue::parse("(1+1*sqrt(4))/3") == SlopeValue::rational(Rat(1)));

    // b = 0 demotes as well.
    CHECK(SlopeValue::parse("(3+0*sqrt(5))/2") == SlopeValue::parse("3/2"));

    SlopeValue neg = SlopeValue::parse("(1-1*sqrt(2))/1");
    CHECK(neg.sign() < 0);
    CHECK(neg.str() == "(1-1*sqrt(2))/1");
    CHECK(SlopeValue::parse(neg.str()) == neg);

    CHECK(SlopeValue::parse("7/5").rat() == Rat(7, 5));
    CHECK(SlopeValue::parse(" ( 1 + 1 * sqrt( 5 ) ) / 2 ") ==
          SlopeValue::parse("(1+1*sqrt(5))/2"));
    CHECK(SlopeValue::parse("-14/10").rat() == Rat(-7, 5));

    CHECK_THROWS_AS(SlopeValue::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(SlopeValue::parse("(1+1*sqrt(5))"), std::invalid_argument);
    CHECK_THROWS_AS(SlopeValue::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(SlopeValue::parse("1/0"), std::invalid_argument);
}

TEST_CASE("exact comparison against rationals") {
    SlopeValue sqrt2 = SlopeValue::parse("(0+1*sqrt(2))/1");
    CHECK(sqrt2.compare_to_rational(Rat(3, 2)) == Ordering::Less);  // 2 < 9/4
    CHECK(sqrt2.compare_to_rational(Rat(7, 5)) == Ordering::Greater);

    CHECK(SlopeValue::parse("7/5").compare_to_rational(Rat(7, 5)) == Ordering::Equal);

    // (1+sqrt(5))/2 vs 13/8: 8 + 8*sqrt(5) vs 26, i.e. 320 vs 324 after squaring.
    CHECK(Int(8 * 8 * 5) < Int(18 * 18));
    SlopeValue phi = SlopeValue::parse("(1+1*sqrt(5))/2");
    CHECK(phi.compare_to_rational(Rat(13, 8)) == Ordering::Less);
    CHECK(phi.compare_to_rational(Rat(8, 5)) == Ordering::Greater);

    // Negative values.
    SlopeValue neg = SlopeValue::parse("(0-1*sqrt(3))/2");
    CHECK(neg.compare_to_rational(Rat(0)) == Ordering::Less);
    CHECK(neg.compare_to_rational(Rat(-1)) == Ordering::Greater);  // -0.866 > -1
}

TEST_CASE("comparison agrees with 256-bit numeric evaluation") {
    std::mt19937_64 rng(42);
    auto rnd = [&](long lo, long hi) {
        return static_cast<long>(lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)));
    };
    const long nonsquare[] = {2, 3, 5, 6, 7, 10, 11, 13, 17, 19, 23, 29};
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        Int a(rnd(-50, 50));
        Int b(rnd(-20, 20));
        if (b == 0) b = 1;
        Int c(rnd(1, 30));
        Int d(nonsquare[rng() % 12]);
        SlopeValue s = SlopeValue::quadratic(a, b, c, d);
        Rat r = make_rat(Int(rnd(-200, 200)), Int(rnd(1, 120)));
        Ordering ord = s.is_rational() ? (s.rat() < r ? Ordering::Less
                                          : s.rat() > r ? Ordering::Greater
                                                        : Ordering::Equal)
                                       : s.compare_to_rational(r);
        Interval enc = s.enclosure(256);
        if (enc.hi < r) {
            CHECK(ord == Ordering::Less);
            ++checked;
        } else if (enc.lo > r) {
            CHECK(ord == Ordering::Greater);
            ++checked;
        }
        // Straddling enclosures (rational hit or sub-2^-256 margin) are not
        // informative either way; the exact comparison is the ground truth.
    }
    CHECK(checked > 9000);
}

TEST_CASE("quadratic arithmetic and exact floors") {
    QuadVal phi = SlopeValue::parse("(1+1*sqrt(5))/2").quad();

    // phi^2 = phi + 1.
    QuadVal sq = quad_mul(phi, phi);
    QuadVal expect = quad_add_rat(phi, Rat(1));
    CHECK(sq.a == expect.a);
    CHECK(sq.b == expect.b);
    CHECK(sq.c == expect.c);

    // 1/phi = phi - 1.
    QuadVal inv = quad_reciprocal(phi);
    QuadVal expect2 = quad_sub_rat(phi, Rat(1));
    CHECK(inv.a == expect2.a);
    CHECK(inv.b == expect2.b);
    CHECK(inv.c == expect2.c);

    CHECK(floor_quad(phi) == 1);
    CHECK(floor_quad(quad_scale(phi, Int(100))) == 161);   // 100*phi = 161.8...
    CHECK(floor_quad(quad_scale(phi, Int(-1))) == -2);     // -phi = -1.61...

    std::mt19937_64 rng(7);
    const long nonsquare[] = {2, 3, 5, 7, 13, 21};
    for (int i = 0; i < 2000; ++i) {
        Int a(static_cast<long>(rng() % 2001) - 1000);
        Int b(static_cast<long>(rng() % 199) - 99);
        if (b == 0) b = 7;
        Int c(1 + static_cast<long>(rng() % 50));
        QuadVal v = make_quad(a, b, c, Int(nonsquare[rng() % 6]));
        Int f = floor_quad(v);
        // Certify with a fine enclosure: both endpoints must land in [f, f+1).
        Interval enc = v.enclosure(256);
        CHECK(Rat(f) <= enc.hi);
        CHECK(enc.lo < Rat(f + 1));
        CHECK(v.compare(Rat(f)) > 0);      // strict: value is irrational
        CHECK(v.compare(Rat(f + 1)) < 0);
    }
}
