#include "sectorcount/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "sectorcount/errors.hpp"

namespace sectorcount {

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (root) *root = isqrt(n);
    return true;
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_rat(const Rat& x) {
    return floor_div(x.get_num(), x.get_den());
}

Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

bool is_integer(const Rat& x) {
    return x.get_den() == 1;
}

Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int pow2(unsigned long e) {
    Int r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

Int pow10_int(unsigned long e) {
    return pow_int(Int(10), e);
}

Int count_in_ap(const Int& lo, const Int& hi, const Int& r, const Int& q) {
    if (q <= 0) throw std::invalid_argument("count_in_ap: modulus must be positive");
    if (lo > hi) return 0;
    return floor_div(hi - r, q) - floor_div(lo - 1 - r, q);
}

Int mod_inverse(const Int& p, const Int& q) {
    if (q <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
    if (q == 1) return 0;
    Int pp;
    mpz_mod(pp.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), pp.get_mpz_t(), q.get_mpz_t()) == 0)
        throw std::invalid_argument("mod_inverse: arguments are not coprime");
    return inv;
}

std::vector<Int> geometric_grid(const Int& r_min, const Int& r_max, int points) {
    if (points < 1) throw std::invalid_argument("geometric_grid: points must be >= 1");
    if (r_min <= 0 || r_max < r_min)
        throw std::invalid_argument("geometric_grid: need 0 < r_min <= r_max");
    std::vector<Int> grid;
    grid.reserve(static_cast<size_t>(points));
    if (points == 1 || r_min == r_max) {
        grid.assign(static_cast<size_t>(points), r_min);
        return grid;
    }
    const unsigned long n1 = static_cast<unsigned long>(points - 1);
    for (int k = 0; k < points; ++k) {
        // r_k = round(G^(1/(n-1))) with G = r_min^(n-1-k) * r_max^k.
        Int g = pow_int(r_min, n1 - static_cast<unsigned long>(k)) *
                pow_int(r_max, static_cast<unsigned long>(k));
        Int root;
        mpz_root(root.get_mpz_t(), g.get_mpz_t(), n1);
        // Round up when G >= ((2*root+1)/2)^(n-1).
        Int lhs = pow2(n1) * g;
        Int rhs = pow_int(2 * root + 1, n1);
        grid.push_back(lhs >= rhs ? root + 1 : root);
    }
    return grid;
}

namespace {

// Sign of (j * c0d)^w * xu  -  (2^(fb+1) * c0n)^w * yu, i.e. of j - 2*z where
// z = c0 * 2^fb * (y^u / x^u)^(1/w). All quantities positive.
int cmp_twice_target(const Int& j, const Int& c0n, const Int& c0d, const Int& xu,
                     const Int& yu, unsigned long w, unsigned frac_bits) {
    Int lhs = pow_int(j * c0d, w) * xu;
    Int rhs = pow_int(pow2(frac_bits + 1) * c0n, w) * yu;
    return cmp(lhs, rhs);
}

}  // namespace

Rat dyadic_power_schedule(const Rat& c0, const Rat& R, const Rat& lambda,
                          unsigned frac_bits) {
    if (c0 <= 0) throw std::invalid_argument("schedule: c0 must be positive");
    if (R <= 0) throw std::invalid_argument("schedule: R must be positive");
    if (lambda < 0) throw std::invalid_argument("schedule: lambda must be >= 0");

    const Int& c0n = c0.get_num();
    const Int& c0d = c0.get_den();
    const unsigned long u = static_cast<unsigned long>(lambda.get_num().get_ui());
    const unsigned long w = static_cast<unsigned long>(lambda.get_den().get_ui());
    if (!lambda.get_num().fits_ulong_p() || !lambda.get_den().fits_ulong_p())
        throw std::invalid_argument("schedule: lambda out of supported range");
    const Int xu = pow_int(R.get_num(), u);
    const Int yu = pow_int(R.get_den(), u);

    // K = floor(z + 1/2) is the largest integer with 2K - 1 <= 2z. Find it by
    // doubling then bisecting on the exact comparison; fully deterministic.
    Int hi = 1;
    while (cmp_twice_target(2 * hi - 1, c0n, c0d, xu, yu, w, frac_bits) <= 0) hi <<= 1;
    Int lo = 0;  // 2*0 - 1 = -1 <= 2z always
    while (hi - lo > 1) {
        Int mid = (lo + hi) >> 1;
        if (cmp_twice_target(2 * mid - 1, c0n, c0d, xu, yu, w, frac_bits) <= 0)
            lo = mid;
        else
            hi = mid;
    }
    if (lo == 0)
        throw std::invalid_argument("schedule: epsilon underflows the dyadic grid");
    return make_rat(lo, pow2(frac_bits));
}

std::string to_decimal_string(const Rat& x, int sig) {
    if (sig < 1) throw std::invalid_argument("to_decimal_string: sig must be >= 1");
    if (x == 0) return "0";
    const bool neg = x < 0;
    Rat a = neg ? Rat(-x) : x;

    // Decimal exponent g: largest g with 10^g <= a.
    long g = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
    auto pow10_rat = [](long e) {
        return e >= 0 ? Rat(pow10_int(static_cast<unsigned long>(e)))
                      : make_rat(1, pow10_int(static_cast<unsigned long>(-e)));
    };
    while (pow10_rat(g) > a) --g;
    while (pow10_rat(g + 1) <= a) ++g;

    // M = round(a * 10^(sig-1-g)), half-up.
    long shift = sig - 1 - g;
    Int num = a.get_num();
    Int den = a.get_den();
    if (shift >= 0)
        num *= pow10_int(static_cast<unsigned long>(shift));
    else
        den *= pow10_int(static_cast<unsigned long>(-shift));
    Int m = floor_div(2 * num + den, 2 * den);
    if (m == pow10_int(static_cast<unsigned long>(sig))) {
        m = pow10_int(static_cast<unsigned long>(sig - 1));
        ++g;
    }

    std::string digits = m.get_str();
    std::string out;
    if (neg) out += '-';
    out += digits[0];
    if (sig > 1) {
        out += '.';
        out += digits.substr(1);
    }
    out += 'e';
    out += (g < 0) ? '-' : '+';
    std::string es = std::to_string(g < 0 ? -g : g);
    if (es.size() < 2) es.insert(es.begin(), '0');
    out += es;
    return out;
}

namespace {

std::string strip_ws(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool signed_integer(std::string_view s) {
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
    return all_digits(s);
}

// mpz_set_str rejects a leading '+'.
Int int_from_string(std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(s.begin());
    return Int(s);
}

}  // namespace

Rat parse_rational(std::string_view text) {
    const std::string s = strip_ws(text);
    if (s.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!signed_integer(num) || !all_digits(den))
            throw std::invalid_argument("bad rational: " + s);
        Int n = int_from_string(num);
        Int d = int_from_string(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + s);
        return make_rat(n, d);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot);
        std::string fp = s.substr(dot + 1);
        if (ip.empty() || ip == "+" || ip == "-") ip += '0';
        if (!signed_integer(ip) || !all_digits(fp))
            throw std::invalid_argument("bad decimal: " + s);
        Int whole = int_from_string(ip);
        Int frac(fp);
        Int scale = pow10_int(fp.size());
        bool neg = (ip[0] == '-');
        Int total = (neg ? -whole : whole) * scale + frac;
        return make_rat(neg ? -total : total, scale);
    }
    if (!signed_integer(s)) throw std::invalid_argument("bad rational: " + s);
    return Rat(int_from_string(s));
}

Rat parse_epsilon(std::string_view text) {
    const std::string s = strip_ws(text);
    // Dyadic form m*2^-k.
    if (auto star = s.find("*2^-"); star != std::string::npos) {
        std::string m = s.substr(0, star);
        std::string k = s.substr(star + 4);
        if (!all_digits(m) || !all_digits(k))
            throw std::invalid_argument("bad dyadic epsilon: " + s);
        unsigned long bits = std::stoul(k);
        return make_rat(Int(m), pow2(bits));
    }
    return parse_rational(s);
}

}  // namespace sectorcount
