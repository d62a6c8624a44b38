#pragma once

#include "sectorcount/rational.hpp"

namespace sectorcount {

// Certified enclosure: an interval with exact rational endpoints guaranteed
// to contain the real quantity it stands for.
struct Interval {
    Rat lo;
    Rat hi;

    Interval() = default;
    explicit Interval(const Rat& point) : lo(point), hi(point) {}
    Interval(const Rat& l, const Rat& h) : lo(l), hi(h) {}

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool is_point() const { return lo == hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, const Rat& b);
Interval operator-(const Interval& a, const Rat& b);
Interval operator*(const Interval& a, const Rat& s);  // sign-aware scaling

// Default working precision in bits for enclosure refinement. Reads
// SECTOR_COUNT_PRECISION from the environment once (default 128).
int default_precision_bits();

// Enclosure of sqrt(d) with width 2^-bits; d >= 0.
Interval sqrt_enclosure(const Int& d, int bits);

// Enclosures of arctan via directed rounding at `bits` of precision.
Interval atan_enclosure(const Rat& x, int bits);
Interval atan_enclosure(const Interval& x, int bits);

}  // namespace sectorcount
