#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "sectorcount/enclosure.hpp"
#include "sectorcount/rational.hpp"

namespace sectorcount {

enum class Ordering { Less, Equal, Greater };

// Value (a + b*sqrt(d)) / c with c > 0 and d a fixed non-square >= 2.
// b == 0 is allowed for intermediates (the value is then rational); all
// arithmetic stays inside the field Q(sqrt(d)), so every derived quantity
// in the counting kernels admits exact sign tests and exact floors.
struct QuadVal {
    Int a, b, c, d;

    bool is_rational() const { return b == 0; }
    Rat to_rat() const;       // requires b == 0
    int sign() const;         // exact sign of the value
    int compare(const Rat& r) const;  // sign of (value - r)
    Interval enclosure(int bits) const;
    double approx() const;
};

QuadVal make_quad(Int a, Int b, Int c, const Int& d);

QuadVal quad_add_rat(const QuadVal& x, const Rat& r);
QuadVal quad_sub_rat(const QuadVal& x, const Rat& r);
QuadVal quad_scale(const QuadVal& x, const Rat& r);
QuadVal quad_scale(const QuadVal& x, const Int& k);
QuadVal quad_mul(const QuadVal& x, const QuadVal& y);  // same d required
QuadVal quad_reciprocal(const QuadVal& x);             // x != 0
QuadVal rat_div_quad(const Rat& r, const QuadVal& x);  // x != 0

// Exact floor; the b != 0 case needs only one integer square root.
Int floor_quad(const QuadVal& x);

// A slope: a reduced rational p/q or a canonical quadratic irrational.
// Canonical quadratic form: square factors extracted from d, gcd(a,b,c) = 1,
// c > 0, b != 0, so equal values have equal fields.
class SlopeValue {
public:
    static SlopeValue rational(const Rat& r);
    static SlopeValue rational(const Int& p, const Int& q);
    // (a + b*sqrt(d))/c; canonicalizes, demotes to rational if the value is.
    static SlopeValue quadratic(const Int& a, const Int& b, const Int& c, const Int& d);
    // "p/q" or "(a+b*sqrt(d))/c", whitespace-insensitive.
    static SlopeValue parse(std::string_view text);

    bool is_rational() const { return std::holds_alternative<Rat>(value_); }
    const Rat& rat() const { return std::get<Rat>(value_); }
    const QuadVal& quad() const { return std::get<QuadVal>(value_); }

    Ordering compare_to_rational(const Rat& r) const;
    int sign() const;
    Interval enclosure(int bits) const;
    double approx() const;
    std::string str() const;

    bool operator==(const SlopeValue& other) const;

private:
    std::variant<Rat, QuadVal> value_;
};

}  // namespace sectorcount
