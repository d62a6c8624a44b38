#include "sectorcount/enclosure.hpp"

#include <mpfr.h>

#include <cstdlib>
#include <stdexcept>

namespace sectorcount {

Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

Interval operator+(const Interval& a, const Rat& b) {
    return {a.lo + b, a.hi + b};
}

Interval operator-(const Interval& a, const Rat& b) {
    return {a.lo - b, a.hi - b};
}

Interval operator*(const Interval& a, const Rat& s) {
    if (s >= 0) return {a.lo * s, a.hi * s};
    return {a.hi * s, a.lo * s};
}

int default_precision_bits() {
    static const int bits = [] {
        const char* env = std::getenv("SECTOR_COUNT_PRECISION");
        if (!env) return 128;
        long v = std::strtol(env, nullptr, 10);
        if (v < 16) v = 16;
        if (v > (1L << 20)) v = 1L << 20;
        return static_cast<int>(v);
    }();
    return bits;
}

Interval sqrt_enclosure(const Int& d, int bits) {
    if (d < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
    if (bits < 1) throw std::invalid_argument("sqrt_enclosure: bits must be >= 1");
    // floor(sqrt(d * 4^bits)) / 2^bits brackets sqrt(d) from below within 2^-bits.
    Int scaled = d;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(),
                 2 * static_cast<unsigned long>(bits));
    Int s = isqrt(scaled);
    Int den = pow2(static_cast<unsigned long>(bits));
    return {make_rat(s, den), make_rat(s + 1, den)};
}

namespace {

// MPFR values are dyadic rationals; the conversion is exact.
Rat mpfr_to_rat(mpfr_srcptr m) {
    if (mpfr_zero_p(m)) return Rat(0);
    Int z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), m);
    if (e >= 0) {
        Int scaled = z;
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(),
                     static_cast<unsigned long>(e));
        return Rat(scaled);
    }
    return make_rat(z, pow2(static_cast<unsigned long>(-e)));
}

Rat atan_directed(const Rat& x, int bits, mpfr_rnd_t rnd) {
    mpfr_t t;
    mpfr_init2(t, static_cast<mpfr_prec_t>(bits));
    mpfr_set_q(t, x.get_mpq_t(), rnd);
    mpfr_atan(t, t, rnd);
    Rat out = mpfr_to_rat(t);
    mpfr_clear(t);
    return out;
}

}  // namespace

Interval atan_enclosure(const Rat& x, int bits) {
    if (bits < 2) throw std::invalid_argument("atan_enclosure: bits must be >= 2");
    // arctan is increasing, so rounding the argument and the result in the
    // same direction preserves the bound.
    return {atan_directed(x, bits, MPFR_RNDD), atan_directed(x, bits, MPFR_RNDU)};
}

Interval atan_enclosure(const Interval& x, int bits) {
    if (bits < 2) throw std::invalid_argument("atan_enclosure: bits must be >= 2");
    return {atan_directed(x.lo, bits, MPFR_RNDD), atan_directed(x.hi, bits, MPFR_RNDU)};
}

}  // namespace sectorcount
