#include "bmlab/eichler.hpp"

#include "bmlab/moments.hpp"
#include "bmlab/quadrature.hpp"
#include "bmlab/specfun.hpp"
#include "test_util.hpp"

using namespace bmlab;
using namespace bmlab::eichler;
using modular::NamedForm;
using bmlab::testing::close;
using bmlab::testing::R;

static const PrecisionContext ctx;

namespace {
Real bologna_c(const PrecisionContext& c) {
    long p = c.work_bits();
    Real g = specfun::gamma(Real::from_ratio(1, 15, p), c) * specfun::gamma(Real::from_ratio(2, 15, p), c) *
             specfun::gamma(Real::from_ratio(4, 15, p), c) * specfun::gamma(Real::from_ratio(8, 15, p), c);
    return g / (240 * const_pi(p) * const_pi(p));
}
Complex cm_point(long p) {
    return Complex(Real::from_ratio(1, 2, p), sqrt(Real(5, p)) / (2 * sqrt(Real(3, p))));
}
}  // namespace

TEST_CASE("critical L-values and their Eichler route") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    Real L463 = lvalue(NamedForm::F46, 3, ctx);
    // (1.6): IKM(2,4;1) = 3/2 L(f46,3) = pi^2/2 L(f46,1)
    Real ikm241 = moments::ikm(2, 4, 1, ctx).value;
    CHECK(close(3 * L463 / 2, ikm241, 32));
    CHECK(close(pi * pi / 2 * lvalue(NamedForm::F46, 1, ctx), ikm241, 32));
    CHECK_THROWS_AS(lvalue(NamedForm::F46, 4, ctx), std::domain_error);
    // explicit polynomial sums match the split sums
    CHECK(close(lvalue_explicit(NamedForm::F46, 3, ctx), L463, 38));
    CHECK(close(lvalue_explicit(NamedForm::F66, 3, ctx), lvalue(NamedForm::F66, 3, ctx), 38));
    CHECK(close(lvalue_explicit(NamedForm::F66, 5, ctx), lvalue(NamedForm::F66, 5, ctx), 38));
    // route agreement with plain contour quadrature
    CHECK(close(lvalue_via_contour(NamedForm::F46, 3, ctx), L463, ctx.digits - 4));
    CHECK(close(lvalue_via_contour(NamedForm::F66, 5, ctx), lvalue(NamedForm::F66, 5, ctx), ctx.digits - 4));
    // Eichler-Shimura-Manin rational ratio
    Real ratio = lvalue(NamedForm::F66, 5, ctx) / (specfun::zeta_int(2, ctx) * lvalue(NamedForm::F66, 3, ctx));
    CHECK(close(ratio, Real::from_ratio(4, 7, p), 30));
}

TEST_CASE("vertical Eichler integrals against the moments") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    Complex one(1, p);
    // (pi^3/i) int_0^(i inf) f46 dz = IKM(2,4;1)
    EichlerSpec s0{NamedForm::F46, {one}, ContourPath::vertical(mpq_class(0), Real(p))};
    Complex I0 = eichler_vertical(s0, ctx);
    Complex lhs = Complex(Real(p), -pow(pi, 3)) * I0;
    CHECK(close(lhs.re, moments::ikm(2, 4, 1, ctx).value, 32));
    CHECK(abs(lhs.im) < pow10(-36, p));
    // -6 pi^2 int f46 z dz = IKM(3,3;1)
    EichlerSpec s1{NamedForm::F46, {Complex(p), one}, ContourPath::vertical(mpq_class(0), Real(p))};
    Complex I1 = eichler_vertical(s1, ctx);
    CHECK(close((I1 * (-6) * pi * pi).re, moments::ikm(3, 3, 1, ctx).value, 32));
    // Fricke reflection: 6 pi^3 i int_(i/sqrt6) f46 z^2 dz = -pi^3 i int_0^(i/sqrt6) f46 dz
    Real y6 = 1 / sqrt(Real(6, p));
    EichlerSpec s2{NamedForm::F46, {Complex(p), Complex(p), one}, ContourPath::vertical(mpq_class(0), y6)};
    Complex upper_z2 = eichler_vertical(s2, ctx);
    EichlerSpec s3{NamedForm::F46, {one}, ContourPath::vertical(mpq_class(0), y6)};
    Complex lower = I0 - eichler_vertical(s3, ctx);  // int_0^(i/sqrt6)
    CHECK(close(upper_z2 * 6, -lower, ctx.digits - 2));
    // linearity in the polynomial weight
    EichlerSpec sp{NamedForm::F46, {one, one}, ContourPath::vertical(mpq_class(0), Real(p))};
    Complex both = eichler_vertical(sp, ctx);
    CHECK(close(both, I0 + eichler_vertical(s1, ctx), ctx.digits));
    // split-point independence: Fricke split vs direct termwise from higher up
    EichlerSpec hi{NamedForm::F46, {one}, ContourPath::vertical(mpq_class(0), y6 * 5 / 4)};
    Complex tail_hi = eichler_vertical(hi, ctx);
    EichlerSpec lo_seg{NamedForm::F46, {one}, ContourPath::vertical(mpq_class(0), y6)};
    // numeric quadrature of the short segment [y6, 1.25 y6]
    quad::Fn fn = [&](const Real& y) {
        Complex z(Real(p), y);
        return modular::eval_form(NamedForm::F46, modular::UpperHalfPoint(z), ctx).re;
    };
    Real seg = quad::gl_adaptive(fn, y6, y6 * 5 / 4, p, pow10(-(ctx.digits + 8), p), 32, 8).value;
    CHECK(close(eichler_vertical(lo_seg, ctx).im, tail_hi.im + seg, ctx.digits));
}

TEST_CASE("6-loop identities through f66 verticals") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    Complex one(1, p);
    auto vert = [&](std::vector<Complex> poly) {
        EichlerSpec s{NamedForm::F66, std::move(poly), ContourPath::vertical(mpq_class(0), Real(p))};
        return eichler_vertical(s, ctx);
    };
    Complex J0_ = vert({one});
    Complex J2 = vert({Complex(p), Complex(p), one});
    Complex J4 = vert({Complex(p), Complex(p), Complex(p), Complex(p), one});
    // IKM(2,6;1) = pi^5/(4i) int f66 = 27/4 L(f66,5)
    Real ikm261 = (Complex(Real(p), -pow(pi, 5) / 4) * J0_).re;
    CHECK(close(ikm261, 27 * lvalue(NamedForm::F66, 5, ctx) / 4, 34));
    // IKM(4,4;1) = 4 pi^3 i int f66 z^2 = L(f66,3)
    Real ikm441 = (Complex(Real(p), 4 * pow(pi, 3)) * J2).re;
    CHECK(close(ikm441, lvalue(NamedForm::F66, 3, ctx), 34));
    // z^4 + (2/7) z^2 vanishing
    Complex vanish = J4 + J2 * Real::from_ratio(2, 7, p);
    CHECK(abs(vanish.re) + abs(vanish.im) < pow10(-34, p));
}

TEST_CASE("Eichler E family at the CM point") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    Real c = bologna_c(ctx);
    Complex z0 = cm_point(p);
    Real ikm031 = moments::ikm(0, 3, 1, ctx).value;
    Complex E0 = eichler_E(0, z0, ctx);
    CHECK(close(E0, Complex(pow(pi, 3) / (8 * sqrt(Real(15, p))), Real(p)), 30));
    Complex E1 = eichler_E(1, z0, ctx);
    CHECK(close(E1, Complex(Real(p), -(pow(pi, 3) / 20 - 3 * pi * ikm031 / (2 * sqrt(Real(5, p))))), 30));
    Complex E2 = eichler_E(2, z0, ctx);
    CHECK(close(E2, Complex(3 * sqrt(Real(3, p)) * pi * ikm031 / 5, Real(p)), 30));
    Complex E3 = eichler_E(3, z0, ctx);
    CHECK(close(E3, Complex(Real(p), 27 * sqrt(Real(5, p)) * pi * c * c), 30));
    Complex E4 = eichler_E(4, z0, ctx);
    CHECK(close(E4, Complex(-108 * sqrt(Real(3, p)) * pi * c * c * (3 * c + 1), Real(p)), 30));
    CHECK_THROWS_AS(eichler_E(2, Complex(Real(p), Real(1, p)), ctx), std::domain_error);
}

TEST_CASE("id240 composite integral equals one") {
    long p = ctx.work_bits();
    Real y0 = sqrt(Real(5, p)) / (2 * sqrt(Real(3, p)));
    const auto& q = modular::form_qseries(NamedForm::EichlerKernel46, 80);
    Complex v = vertical_termwise(q, mpq_class(1, 2), y0,
                                  {Complex(-1, p), Complex(2, p)}, ctx);
    Complex res = v * 240;
    CHECK(close(res, Complex(Real(1, p), Real(p)), 30));
}

TEST_CASE("arc integrals: 2arc vanishing identity") {
    long p = ctx.work_bits();
    Complex one(1, p);
    Real y1 = 1 / (2 * sqrt(Real(3, p)));
    // vertical piece from 1/2 + i/(2 sqrt3): f66 (1-2z)^2 = 1 - 4z + 4z^2
    EichlerSpec vs{NamedForm::F66,
                   {one, Complex(Real(-4, p)), Complex(Real(4, p))},
                   ContourPath::vertical(mpq_class(1, 2), y1)};
    Complex vert = eichler_vertical(vs, ctx);
    // arc piece: z = 1/2 + (i/(2 sqrt3)) e^(i phi), phi from pi/3 to 0,
    // weight 1 - 4z + 8z^2
    Real pi = const_pi(p);
    EichlerSpec as{NamedForm::F66,
                   {one, Complex(Real(-4, p)), Complex(Real(8, p))},
                   ContourPath::arc(Complex(Real::from_ratio(1, 2, p), Real(p)), y1, pi / 3, Real(p))};
    // center 1/2, radius i/(2 sqrt3) e^(i phi): parametrize with phase shifted
    // by pi/2: z = 1/2 + y1 e^(i(phi + pi/2))
    as.path.phi_from = pi / 3 + pi / 2;
    as.path.phi_to = pi / 2;
    Complex arc = eichler_arc(as, ctx);
    Complex total = vert + arc;
    CHECK(abs(total.re) + abs(total.im) < pow10(-30, p));
}

TEST_CASE("Broadhurst G integrals and the determinant") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    Real g243 = broadhurst_G(0, ctx);
    Real g153 = broadhurst_G(1, ctx);
    CHECK(close(g243, moments::ikm(2, 4, 3, ctx).value, 30));
    CHECK(close(g153, moments::ikm(1, 5, 3, ctx).value, 30));
    Real det = moments::ikm(1, 5, 1, ctx).value * g243 - moments::ikm(2, 4, 1, ctx).value * g153;
    CHECK(close(det, pow(pi, 4) / 576, 30));
    // the G recipe built from v matches the four-term eta-quotient sum
    using modular::EtaQuotientPart;
    long N = 110;
    modular::QSeries f46 = modular::quotient_qseries(modular::form_spec(NamedForm::F46).recipe, N);
    modular::QSeries v = modular::eta_quotient_qseries({{3, 4}, {1, -4}, {2, 2}, {6, -2}}, N);
    v *= mpq_class(3);
    modular::QSeries v2 = v * v, vi = v.inverse();
    modular::QSeries vi2 = vi * vi;
    modular::QSeries P = v2 * v2 - v2 * mpq_class(6) - vi2 * mpq_class(6) + (vi2 * vi2) * mpq_class(9);
    modular::QSeries two(0, 24, {mpq_class(2)});
    two.valid24 = 24 * (N + 1);
    P += two;
    modular::QSeries G96v = (f46 * P) * mpq_class(1, 96);
    modular::QSeries G96 = modular::quotient_qseries(broadhurst_G_terms(), N);
    bool same = true;
    for (long n = 1; n <= 100; ++n)
        if (G96v.a(n) != G96.a(n)) same = false;
    CHECK(same);
}
