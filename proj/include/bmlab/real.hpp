#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "bmlab/precision.hpp"

namespace bmlab {

// Arbitrary-precision real number on top of MPFR. Each value carries its own
// precision; binary operations produce results at the larger operand
// precision, rounded to nearest. All operations are exactly rounded, hence
// deterministic for fixed inputs and precisions.
class Real {
  public:
    Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit Real(long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_zero(v_, 1); }
    Real(long n, long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_si(v_, n, MPFR_RNDN); }
    Real(const char* s, long prec_bits) {
        mpfr_init2(v_, prec_bits);
        mpfr_set_str(v_, s, 10, MPFR_RNDN);
    }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }

    static Real zero(long prec_bits) { return Real(prec_bits); }
    static Real from_si(long n, long prec_bits) { return Real(n, prec_bits); }
    static Real from_ratio(long num, long den, long prec_bits);

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(long n) { mpfr_mul_si(v_, v_, n, MPFR_RNDN); return *this; }
    Real& operator/=(long n) { mpfr_div_si(v_, v_, n, MPFR_RNDN); return *this; }
    Real& operator+=(long n) { mpfr_add_si(v_, v_, n, MPFR_RNDN); return *this; }
    Real& operator-=(long n) { mpfr_sub_si(v_, v_, n, MPFR_RNDN); return *this; }

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(Real a, const Real& b) { a += b; return a; }
    friend Real operator-(Real a, const Real& b) { a -= b; return a; }
    friend Real operator*(Real a, const Real& b) { a *= b; return a; }
    friend Real operator/(Real a, const Real& b) { a /= b; return a; }
    friend Real operator+(Real a, long b) { a += b; return a; }
    friend Real operator-(Real a, long b) { a -= b; return a; }
    friend Real operator*(Real a, long b) { a *= b; return a; }
    friend Real operator/(Real a, long b) { a /= b; return a; }
    friend Real operator*(long a, Real b) { b *= a; return b; }
    friend Real operator+(long a, Real b) { b += a; return b; }
    friend Real operator-(long a, Real b) {
        Real r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  private:
    mpfr_t v_;
};

// Unary functions; result precision follows the argument.
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real floor(const Real& x);
Real round_nearest(const Real& x);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);  // x > 0
Real tgamma(const Real& x);              // MPFR Gamma, x > 0
Real gamma_upper(const Real& a, const Real& x);  // incomplete Gamma(a, x)
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real const_pi(long prec_bits);
Real const_euler(long prec_bits);  // Euler-Mascheroni gamma
Real const_log2(long prec_bits);

// 10^(-k) at the given precision, for tolerance arithmetic.
Real pow10(long k, long prec_bits);

// ldexp-style scaling by 2^e (exact).
Real mul_2si(const Real& x, long e);

}  // namespace bmlab
