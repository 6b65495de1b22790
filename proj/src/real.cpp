#include "bmlab/real.hpp"

#include <cstdlib>
#include <cstring>
#include <vector>

#include "bmlab/complex.hpp"

namespace bmlab {

Real Real::from_ratio(long num, long den, long prec_bits) {
    Real r(num, prec_bits);
    r /= den;
    return r;
}

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    std::string sign;
    if (mant[0] == '-') {
        sign = "-";
        mant.erase(0, 1);
    }
    // Scientific form d.ddd...e<exp>; mpfr's exponent is relative to 0.ddd.
    std::string out = sign + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

#define BMLAB_UNARY(name, mpfr_fn)              \
    Real name(const Real& x) {                  \
        Real r(x.prec());                       \
        mpfr_fn(r.raw(), x.raw(), MPFR_RNDN);   \
        return r;                               \
    }

BMLAB_UNARY(abs, mpfr_abs)
BMLAB_UNARY(sqrt, mpfr_sqrt)
BMLAB_UNARY(exp, mpfr_exp)
BMLAB_UNARY(log, mpfr_log)
BMLAB_UNARY(sin, mpfr_sin)
BMLAB_UNARY(cos, mpfr_cos)
BMLAB_UNARY(atan, mpfr_atan)
BMLAB_UNARY(tgamma, mpfr_gamma)

#undef BMLAB_UNARY

Real floor(const Real& x) {
    Real r(x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

Real round_nearest(const Real& x) {
    Real r(x.prec());
    mpfr_round(r.raw(), x.raw());
    return r;
}

Real atan2(const Real& y, const Real& x) {
    Real r(y.prec() > x.prec() ? y.prec() : x.prec());
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long n) {
    Real r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r(x.prec() > y.prec() ? x.prec() : y.prec());
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

Real gamma_upper(const Real& a, const Real& x) {
    Real r(a.prec() > x.prec() ? a.prec() : x.prec());
    mpfr_gamma_inc(r.raw(), a.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

Real const_pi(long prec_bits) {
    Real r(prec_bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real const_euler(long prec_bits) {
    Real r(prec_bits);
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    return r;
}

Real const_log2(long prec_bits) {
    Real r(prec_bits);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

Real pow10(long k, long prec_bits) {
    Real r(10, prec_bits);
    mpfr_pow_si(r.raw(), r.raw(), k, MPFR_RNDN);
    return r;
}

Real mul_2si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

Real abs(const Complex& z) {
    Real r(z.prec());
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return Complex(m * cos(z.im), m * sin(z.im));
}

Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

Complex sqrt(const Complex& z) {
    // Principal branch via half-angle; stable for all quadrants.
    Real m = abs(z);
    if (m.is_zero()) return Complex(z.prec());
    Real u = sqrt((m + z.re) / 2);
    if (u.is_zero()) {  // negative real axis
        Real v = sqrt(m);
        return Complex(Real(z.prec()), z.im.sign() >= 0 ? v : -v);
    }
    Real v = z.im / (u * 2);
    return Complex(std::move(u), std::move(v));
}

Complex pow(const Complex& z, long n) {
    long prec = z.prec();
    Complex r(1, prec);
    if (n == 0) return r;
    bool neg = n < 0;
    unsigned long e = neg ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Complex base = z;
    while (e) {
        if (e & 1UL) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    if (neg) {
        Complex one(1, prec);
        r = one / r;
    }
    return r;
}

Complex pow(const Complex& z, const Real& b) { return exp(log(z) * b); }

}  // namespace bmlab
