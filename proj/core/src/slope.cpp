#include "sectorcount/slope.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace sectorcount {

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// Sign of u + v*sqrt(d) for integers u, v; d positive non-square.
int sign_linear_sqrt(const Int& u, const Int& v, const Int& d) {
    if (v == 0) return sgn(u);
    if (v > 0) {
        if (u >= 0) return 1;
        // u < 0: compare v*sqrt(d) with |u| by squaring.
        int c = cmp(v * v * d, u * u);
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
    }
    // v < 0: value = -( |v|*sqrt(d) - u ).
    if (u <= 0) return -1;
    int c = cmp(u * u, v * v * d);
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

}  // namespace

QuadVal make_quad(Int a, Int b, Int c, const Int& d) {
    if (c == 0) throw std::invalid_argument("quad: zero denominator");
    if (d < 2) throw std::invalid_argument("quad: d must be >= 2");
    if (c < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    Int g = gcd3(a, b, c);
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
    return QuadVal{a, b, c, d};
}

Rat QuadVal::to_rat() const {
    if (b != 0) throw std::logic_error("quad: irrational value has no rational form");
    return make_rat(a, c);
}

int QuadVal::sign() const {
    return sign_linear_sqrt(a, b, d);  // c > 0
}

int QuadVal::compare(const Rat& r) const {
    // (a + b*sqrt(d))/c - n/m has the sign of (a*m - n*c) + b*m*sqrt(d).
    const Int& n = r.get_num();
    const Int& m = r.get_den();
    return sign_linear_sqrt(a * m - n * c, b * m, d);
}

Interval QuadVal::enclosure(int bits) const {
    Interval s = sqrt_enclosure(d, bits);
    Rat ra(a), rc(c);
    if (b >= 0) {
        return {(ra + s.lo * Rat(b)) / rc, (ra + s.hi * Rat(b)) / rc};
    }
    return {(ra + s.hi * Rat(b)) / rc, (ra + s.lo * Rat(b)) / rc};
}

double QuadVal::approx() const {
    return (a.get_d() + b.get_d() * std::sqrt(d.get_d())) / c.get_d();
}

QuadVal quad_add_rat(const QuadVal& x, const Rat& r) {
    const Int& n = r.get_num();
    const Int& m = r.get_den();
    return make_quad(x.a * m + n * x.c, x.b * m, x.c * m, x.d);
}

QuadVal quad_sub_rat(const QuadVal& x, const Rat& r) {
    return quad_add_rat(x, Rat(-r));
}

QuadVal quad_scale(const QuadVal& x, const Rat& r) {
    return make_quad(x.a * r.get_num(), x.b * r.get_num(), x.c * r.get_den(), x.d);
}

QuadVal quad_scale(const QuadVal& x, const Int& k) {
    return make_quad(x.a * k, x.b * k, x.c, x.d);
}

QuadVal quad_mul(const QuadVal& x, const QuadVal& y) {
    if (x.d != y.d) throw std::logic_error("quad_mul: mismatched radicands");
    return make_quad(x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a,
                     x.c * y.c, x.d);
}

QuadVal quad_reciprocal(const QuadVal& x) {
    if (x.b == 0) {
        if (x.a == 0) throw std::invalid_argument("quad_reciprocal: zero value");
        return make_quad(x.c, 0, x.a, x.d);
    }
    // 1/x = c*(a - b*sqrt(d)) / (a^2 - b^2 d); the norm is nonzero since
    // sqrt(d) is irrational.
    Int norm = x.a * x.a - x.b * x.b * x.d;
    return make_quad(x.c * x.a, -x.c * x.b, norm, x.d);
}

QuadVal rat_div_quad(const Rat& r, const QuadVal& x) {
    return quad_scale(quad_reciprocal(x), r);
}

Int floor_quad(const QuadVal& x) {
    if (x.b == 0) return floor_div(x.a, x.c);
    // floor(b*sqrt(d)) for b != 0; b*sqrt(d) is irrational.
    Int t;
    if (x.b > 0) {
        t = isqrt(x.b * x.b * x.d);
    } else {
        t = -isqrt(x.b * x.b * x.d) - 1;
    }
    // The value lies in the open unit interval ((a+t)/c, (a+t+1)/c) scaled by
    // 1/c; since it is irrational, floor(value) = floor((a+t)/c).
    return floor_div(x.a + t, x.c);
}

SlopeValue SlopeValue::rational(const Rat& r) {
    SlopeValue s;
    Rat v = r;
    v.canonicalize();
    s.value_ = v;
    return s;
}

SlopeValue SlopeValue::rational(const Int& p, const Int& q) {
    return rational(make_rat(p, q));
}

SlopeValue SlopeValue::quadratic(const Int& a, const Int& b, const Int& c, const Int& d) {
    if (d <= 0) throw std::invalid_argument("slope: radicand must be positive");
    if (c == 0) throw std::invalid_argument("slope: zero denominator");
    // Extract square factors: d = f^2 * d' folds into b.
    Int dd = d;
    Int bb = b;
    for (Int f = 2; f * f <= dd; ++f) {
        Int f2 = f * f;
        while (dd % f2 == 0) {
            dd /= f2;
            bb *= f;
        }
    }
    if (dd == 1 || bb == 0) {
        // The value is rational: (a + bb)/c or a/c.
        return rational(make_rat(a + bb * dd, c));
    }
    SlopeValue s;
    s.value_ = make_quad(a, bb, c, dd);
    return s;
}

Ordering SlopeValue::compare_to_rational(const Rat& r) const {
    int c;
    if (is_rational()) {
        c = cmp(rat(), r);
    } else {
        c = quad().compare(r);
        if (c == 0) throw std::logic_error("quadratic slope compared equal to a rational");
    }
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
}

int SlopeValue::sign() const {
    if (is_rational()) return sgn(rat());
    return quad().sign();
}

Interval SlopeValue::enclosure(int bits) const {
    if (is_rational()) return Interval(rat());
    return quad().enclosure(bits);
}

double SlopeValue::approx() const {
    if (is_rational()) return rat().get_d();
    return quad().approx();
}

std::string SlopeValue::str() const {
    if (is_rational()) {
        const Rat& r = rat();
        if (r.get_den() == 1) return r.get_num().get_str();
        return r.get_num().get_str() + "/" + r.get_den().get_str();
    }
    const QuadVal& q = quad();
    std::string out = "(" + q.a.get_str();
    if (q.b >= 0) {
        out += "+" + q.b.get_str();
    } else {
        out += "-" + Int(-q.b).get_str();
    }
    out += "*sqrt(" + q.d.get_str() + "))/" + q.c.get_str();
    return out;
}

bool SlopeValue::operator==(const SlopeValue& other) const {
    if (is_rational() != other.is_rational()) return false;
    if (is_rational()) return rat() == other.rat();
    const QuadVal& x = quad();
    const QuadVal& y = other.quad();
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

namespace {

std::string strip_ws_copy(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    return s;
}

// Parses a signed integer starting at pos; advances pos.
Int parse_int_at(const std::string& s, size_t& pos) {
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = (s[pos] == '-');
        ++pos;
    }
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("bad slope literal");
    Int v(s.substr(start, pos - start));
    return neg ? Int(-v) : v;
}

void expect(const std::string& s, size_t& pos, std::string_view token) {
    if (s.compare(pos, token.size(), token) != 0)
        throw std::invalid_argument("bad slope literal: expected '" + std::string(token) + "'");
    pos += token.size();
}

}  // namespace

SlopeValue SlopeValue::parse(std::string_view text) {
    const std::string s = strip_ws_copy(text);
    if (s.empty()) throw std::invalid_argument("empty slope literal");

    if (s[0] != '(') {
        // Rational form p/q or bare integer.
        return rational(parse_rational(s));
    }
    // (a+b*sqrt(d))/c with optional signs on a and b.
    size_t pos = 1;
    Int a = parse_int_at(s, pos);
    if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-'))
        throw std::invalid_argument("bad slope literal: expected sign before surd");
    Int b = parse_int_at(s, pos);
    expect(s, pos, "*sqrt(");
    Int d = parse_int_at(s, pos);
    expect(s, pos, "))/");
    Int c = parse_int_at(s, pos);
    if (pos != s.size()) throw std::invalid_argument("bad slope literal: trailing text");
    return quadratic(a, b, c, d);
}

}  // namespace sectorcount
