#include "bmlab/modular.hpp"

#include "bmlab/specfun.hpp"
#include "test_util.hpp"

using namespace bmlab;
using namespace bmlab::modular;
using bmlab::testing::close;
using bmlab::testing::R;

static const PrecisionContext ctx;

namespace {

Complex cpx(const char* re, const char* im) {
    long p = ctx.work_bits();
    return Complex(Real(re, p), Real(im, p));
}

// CM point 1/2 + i sqrt5/(2 sqrt3)
Complex cm_point() {
    long p = ctx.work_bits();
    return Complex(Real::from_ratio(1, 2, p), sqrt(Real(5, p)) / (2 * sqrt(Real(3, p))));
}

// rescaled Bologna constant c = Gamma-product / (240 pi^2)
Real bologna_c() {
    long p = ctx.work_bits();
    Real g = specfun::gamma(Real::from_ratio(1, 15, p), ctx) *
             specfun::gamma(Real::from_ratio(2, 15, p), ctx) *
             specfun::gamma(Real::from_ratio(4, 15, p), ctx) *
             specfun::gamma(Real::from_ratio(8, 15, p), ctx);
    Real pi = const_pi(p);
    return g / (240 * pi * pi);
}

}  // namespace

TEST_CASE("eta inversion law at deterministic points") {
    long p = ctx.work_bits();
    unsigned long s = 99;
    for (int i = 0; i < 10; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        double xr = -1.0 + (s >> 11) * (2.0 / 9007199254740992.0);
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        double yi = 0.2 + (s >> 11) * (2.0 / 9007199254740992.0);
        Complex z{Real(p), Real(p)};
        mpfr_set_d(z.re.raw(), xr, MPFR_RNDN);
        mpfr_set_d(z.im.raw(), yi, MPFR_RNDN);
        Complex lhs = eta_point(-Complex(1, p) / z, ctx);
        Complex rhs = sqrt(Complex(z.im, -z.re)) * eta_point(z, ctx);  // sqrt(z/i)
        CHECK(close(lhs, rhs, ctx.digits));
    }
}

TEST_CASE("eta special value eta(i/2)/eta(2i) = sqrt(2)") {
    long p = ctx.work_bits();
    Complex a = eta_point(Complex(Real(p), Real::from_ratio(1, 2, p)), ctx);
    Complex b = eta_point(Complex(Real(p), Real(2, p)), ctx);
    Complex q = a / b;
    CHECK(close(q.re, sqrt(Real(2, p)), ctx.digits));
    CHECK(abs(q.im) < pow10(-ctx.digits, p));
}

TEST_CASE("X63 on the imaginary axis: real, positive, monotone") {
    long p = ctx.work_bits();
    Real prev(p);
    for (const char* y : {"0.4", "0.8", "1.6"}) {
        UpperHalfPoint pt(Complex(Real(p), Real(y, p)));
        Complex v = eval_form(NamedForm::X63, pt, ctx);
        CHECK(abs(v.im) < pow10(-ctx.digits + 2, p) * abs(v.re));
        CHECK(v.re > 0);
        if (!prev.is_zero()) CHECK(v.re < prev);  // decreasing toward the cusp
        prev = v.re;
    }
}

TEST_CASE("X63 is real on Re z = 1/2 and takes -1/64 at the CM point") {
    UpperHalfPoint pt(cm_point());
    Complex x = eval_form(NamedForm::X63, pt, ctx);
    long p = ctx.work_bits();
    CHECK(close(x.re, Real::from_ratio(-1, 64, p), ctx.digits - 2));
    CHECK(abs(x.im) < pow10(-ctx.digits + 2, p));
    Complex z = eval_form(NamedForm::Z63, pt, ctx);
    Real want = 8 * sqrt(Real(3, p)) * bologna_c() / const_pi(p);
    CHECK(close(z.re, want, ctx.digits - 2));
}

TEST_CASE("transformation laws: Fricke and W2 for f66, W3 for f46") {
    long p = ctx.work_bits();
    Complex z = cpx("0.31", "0.47");
    PrecisionContext c2 = ctx;
    auto f66 = [&](const Complex& w) { return eval_form(NamedForm::F66, UpperHalfPoint(w), c2); };
    auto f46 = [&](const Complex& w) { return eval_form(NamedForm::F46, UpperHalfPoint(w), c2); };
    // f66(-1/(6z)) = -216 z^6 f66(z)
    Complex fricke = f66(-Complex(1, p) / (z * 6));
    CHECK(close(fricke, pow(z, 6) * f66(z) * (-216), ctx.digits - 4));
    // f66(W2 z) = -8 (3z-1)^6 f66(z)
    Complex w2img = (z * 2 - Real(1, p)) / (z * 6 - Real(2, p));
    CHECK(close(f66(w2img), pow(z * 3 - Real(1, p), 6) * f66(z) * (-8), ctx.digits - 4));
    // f46(W3 z) = 9 (2z-1)^4 f46(z)
    Complex w3img = (z * 3 - Real(2, p)) / (z * 6 - Real(3, p));
    CHECK(close(f46(w3img), pow(z * 2 - Real(1, p), 4) * f46(z) * 9, ctx.digits - 4));
    // periodicity with trivial phase
    CHECK(close(f46(z + Real(1, p)), f46(z), ctx.digits - 2));
}

TEST_CASE("weight-4 kernel identity at a generic point") {
    // [Z63]^2 X63 sqrt(1+4X63) sqrt(1+16X63) = eta-quotient kernel
    long p = ctx.work_bits();
    for (auto zz : {cpx("0.5", "0.9"), cpx("0.0", "0.7"), cpx("0.5", "0.31")}) {
        UpperHalfPoint pt(zz);
        Complex X = eval_form(NamedForm::X63, pt, ctx);
        Complex Z = eval_form(NamedForm::Z63, pt, ctx);
        Complex one(1, p);
        Complex lhs = Z * Z * X * sqrt(one + X * 4) * sqrt(one + X * 16);
        Complex rhs = eval_form(NamedForm::EichlerKernel46, pt, ctx);
        CHECK(close(lhs, rhs, ctx.digits - 2));
    }
}

TEST_CASE("q-series evaluation matches routed form evaluation") {
    Complex z = cpx("0.21", "0.36");
    const QSeries& f = form_qseries(NamedForm::F66, truncation_order(0.36, ctx));
    Complex direct = f.eval(z, ctx.work_bits());
    Complex routed = eval_form(NamedForm::F66, UpperHalfPoint(z), ctx);
    CHECK(close(direct, routed, ctx.digits));
    // low-Im point on the psi-arc: routing vs. factorwise eta evaluation
    long p = ctx.work_bits();
    Real psi = Real("2.6", p);
    Complex zlow = (Complex(1, p) + exp(Complex(Real(p), psi))) / 6;
    Complex a = eval_form(NamedForm::F66, UpperHalfPoint(zlow), ctx);
    Complex b = eval_quotient(form_spec(NamedForm::F66).recipe, zlow, ctx);
    CHECK(close(a, b, ctx.digits - 2));
}

TEST_CASE("eisenstein series") {
    long p = ctx.work_bits();
    UpperHalfPoint iy(Complex(Real(p), Real("1.3", p)));
    Complex e4 = eisenstein(Eisenstein::E4, iy, ctx);
    CHECK(abs(e4.im) < pow10(-ctx.digits, p));
    // E4^3 - E6^2 = 1728 eta^24 at z = 1.1 i
    UpperHalfPoint z11(Complex(Real(p), Real("1.1", p)));
    Complex E4 = eisenstein(Eisenstein::E4, z11, ctx);
    Complex E6 = eisenstein(Eisenstein::E6, z11, ctx);
    Complex eta24 = pow(eta_point(z11.z, ctx), 24);
    CHECK(close(pow(E4, 3) - E6 * E6, eta24 * 1728, ctx.digits - 2));
    // E2star(i) = 3/pi  (equivalently the modular completion E2 vanishes at i)
    UpperHalfPoint ii(Complex(Real(p), Real(1, p)));
    Complex e2s = eisenstein(Eisenstein::E2star, ii, ctx);
    CHECK(close(e2s.re, 3 / const_pi(p), ctx.digits - 2));
    Complex e2 = eisenstein(Eisenstein::E2, ii, ctx);
    CHECK(abs(e2.re) < pow10(-ctx.digits + 2, p));
    // Ramanujan ODE cross-check: (1/2pi i) dE2*/dz = (E2*^2 - E4)/12 via a
    // small Cauchy circle at z = 1.3 i
    long M = 64;
    Real r = Real::from_ratio(1, 10, p);
    Real pi = const_pi(p);
    Complex deriv(p);
    for (long k = 0; k < M; ++k) {
        Real th = 2 * pi * k / M;
        Complex pt = iy.z + Complex(r * cos(th), r * sin(th));
        Complex val = eisenstein(Eisenstein::E2star, UpperHalfPoint(pt), ctx);
        deriv += val * Complex(cos(th), -sin(th));
    }
    deriv /= M;
    deriv /= r;  // f'(z0) = (1/(M r)) sum f_j e^(-i theta_j)
    Complex e2s13 = eisenstein(Eisenstein::E2star, iy, ctx);
    Complex want = (e2s13 * e2s13 - eisenstein(Eisenstein::E4, iy, ctx)) / 12;
    Complex got = deriv / Complex(Real(p), 2 * pi);
    CHECK(close(got, want, ctx.digits - 8));
}

TEST_CASE("CM derivative table against the closed forms") {
    long p = ctx.work_bits();
    Real c = bologna_c();
    Real pi = const_pi(p);
    Real s3 = sqrt(Real(3, p)), s5 = sqrt(Real(5, p)), s15 = sqrt(Real(15, p));
    UpperHalfPoint pt(cm_point());
    CmDerivatives d = cm_derivative_table(pt, 4, ctx);

    // X63 column
    CHECK(close(d.x63[0], Complex(Real::from_ratio(-1, 64, p), Real(p)), 30));
    CHECK(close(d.x63[1], Complex(Real(p), -(3 * s15 * c / 32)), 30));
    CHECK(close(d.x63[2], Complex(9 * c * (9 * c + 1) / 16, Real(p)), 30));
    CHECK(close(d.x63[3], Complex(Real(p), 27 * s15 * c * (18 * c * c - 18 * c - 1) / 80 * (-1)), 30));
    CHECK(close(d.x63[4], Complex(81 * c * (753 * c * c * c + 54 * c * c - 27 * c - 1) / 20, Real(p)), 30));
    // Z63 column
    CHECK(close(d.z63[0], Complex(8 * s3 * c / pi, Real(p)), 30));
    CHECK(close(d.z63[1], Complex(Real(p), -(48 * c * (3 * c - 1) / (s5 * pi))), 30));
    CHECK(close(d.z63[2], Complex(-(48 * s3 * c * (62 * c * c - 18 * c + 3) / (5 * pi)), Real(p)), 30));
    CHECK(close(d.z63[3], Complex(Real(p), 1728 * c * (57 * c * c * c - 62 * c * c + 9 * c - 1) / (5 * s5 * pi)), 30));
    CHECK(close(d.z63[4], Complex(1728 * s3 * c * (266 * pow(c, 4) - 228 * pow(c, 3) + 124 * c * c - 12 * c + 1) / (5 * pi), Real(p)), 30));

    // first derivative cross-route via the Jacobian identity
    Complex jac = x63_derivative_jacobian(pt, ctx);
    CHECK(close(jac, d.x63[1], 30));
}

TEST_CASE("theta point basic identity theta(z)^4 relation") {
    // Jacobi: theta3^4 = theta4^4 + theta2^4 is heavier machinery than needed;
    // instead check theta against its defining sum at two points and
    // against the eta identity theta(z) = eta((z+1)/2)^2 / eta(z+1).
    long p = ctx.work_bits();
    for (auto z : {cpx("0.0", "0.9"), cpx("-0.5", "0.62")}) {
        Complex th = theta_point(z, ctx);
        Complex zp1 = z + Real(1, p);
        Complex e1 = eta_point(zp1 / 2 + Real::from_ratio(0, 1, p), ctx);
        Complex e2 = eta_point(zp1, ctx);
        CHECK(close(th, e1 * e1 / e2, ctx.digits - 2));
    }
}
