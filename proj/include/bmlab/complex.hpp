#pragma once

#include "bmlab/real.hpp"

namespace bmlab {

// Complex number as a pair of Reals. Fractional powers follow the principal
// branch: w^b = exp(b (log|w| + i arg w)) with |arg w| < pi.
class Complex {
  public:
    Real re, im;

    Complex() = default;
    explicit Complex(long prec_bits) : re(prec_bits), im(prec_bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(Real(re.prec())) {}
    Complex(long n, long prec_bits) : re(n, prec_bits), im(prec_bits) {}

    long prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }

    static Complex i_unit(long prec_bits) { return Complex(Real(prec_bits), Real(1, prec_bits)); }

    Complex conj() const { return Complex(re, -im); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real a = re * o.re - im * o.im;
        Real b = re * o.im + im * o.re;
        re = std::move(a);
        im = std::move(b);
        return *this;
    }
    Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
    Complex& operator*=(long n) { re *= n; im *= n; return *this; }
    Complex& operator/=(long n) { re /= n; im /= n; return *this; }
    Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }
    Complex& operator/=(const Complex& o) {
        Real d = o.re * o.re + o.im * o.im;
        Real a = (re * o.re + im * o.im) / d;
        Real b = (im * o.re - re * o.im) / d;
        re = std::move(a);
        im = std::move(b);
        return *this;
    }

    Complex operator-() const { return Complex(-re, -im); }

    friend Complex operator+(Complex a, const Complex& b) { a += b; return a; }
    friend Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
    friend Complex operator*(Complex a, const Complex& b) { a *= b; return a; }
    friend Complex operator/(Complex a, const Complex& b) { a /= b; return a; }
    friend Complex operator*(Complex a, const Real& s) { a *= s; return a; }
    friend Complex operator*(const Real& s, Complex a) { a *= s; return a; }
    friend Complex operator*(Complex a, long n) { a *= n; return a; }
    friend Complex operator*(long n, Complex a) { a *= n; return a; }
    friend Complex operator/(Complex a, long n) { a /= n; return a; }
    friend Complex operator/(Complex a, const Real& s) { a /= s; return a; }
    friend Complex operator+(Complex a, const Real& s) { a.re += s; return a; }
    friend Complex operator-(Complex a, const Real& s) { a.re -= s; return a; }
};

Real abs(const Complex& z);
Real arg(const Complex& z);  // atan2(im, re), in (-pi, pi]
Complex exp(const Complex& z);
Complex log(const Complex& z);   // principal branch
Complex sqrt(const Complex& z);  // principal branch
Complex pow(const Complex& z, long n);
Complex pow(const Complex& z, const Real& b);  // principal branch

}  // namespace bmlab
