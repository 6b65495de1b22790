#include "bmlab/specfun.hpp"

#include <mpfr.h>

#include "test_util.hpp"

using namespace bmlab;
using namespace bmlab::testing;
using specfun::BesselKind;

static const PrecisionContext ctx;  // defaults: 40 digits

TEST_CASE("gamma basics") {
    CHECK(close(specfun::gamma(Real(1, ctx.work_bits()), ctx), Real(1, ctx.work_bits()), 40));
    Real half = Real::from_ratio(1, 2, ctx.work_bits());
    CHECK(close(specfun::gamma(half, ctx), sqrt(const_pi(ctx.work_bits())), 40));
    CHECK_THROWS_AS(specfun::gamma(Real(0L, ctx.work_bits()), ctx), std::domain_error);
    // Gamma-product form of the Bologna value (quadrature comparison lives in test_moments)
    Real g = specfun::gamma(Real::from_ratio(1, 15, ctx.work_bits()), ctx) *
             specfun::gamma(Real::from_ratio(2, 15, ctx.work_bits()), ctx) *
             specfun::gamma(Real::from_ratio(4, 15, ctx.work_bits()), ctx) *
             specfun::gamma(Real::from_ratio(8, 15, ctx.work_bits()), ctx);
    Real bologna = g / (240 * sqrt(Real(5, ctx.work_bits())));
    CHECK(close(bologna, R("1.07128505542180765851871197803081716076317978", ctx), 40));
}

TEST_CASE("zeta_int") {
    Real pi = const_pi(ctx.work_bits());
    CHECK(close(specfun::zeta_int(2, ctx), pi * pi / 6, 45));
    CHECK(close(specfun::zeta_int(3, ctx), R("1.20205690315959428539973816151144999076498629", ctx), 44));
    CHECK_THROWS(specfun::zeta_int(5, ctx));
}

TEST_CASE("bessel power series against fixed references") {
    struct Ref { BesselKind k; const char* t; const char* v; };
    const Ref refs[] = {
        {BesselKind::I0, "3.7", "8.73861752416939558497025290667358648289189488"},
        {BesselKind::I0, "0.125", "1.00391006635335448512784672725246769748359913"},
        {BesselKind::K0, "3.7", "0.0156306599216266616121948374183580163885530556"},
        {BesselKind::K0, "0.125", "2.20786908674497006000761214484982058638524651"},
        {BesselKind::I1, "3.7", "7.43574579653533573051797375654704388519395363"},
        {BesselKind::I1, "0.125", "0.0626221498112348254442442760297015084980837978"},
        {BesselKind::K1, "3.7", "0.017628035102223266687995010597215465643839414"},
        {BesselKind::K1, "0.125", "7.8311182991157511634643381569979800768348562"},
    };
    for (const auto& r : refs) {
        Real got = specfun::bessel(r.k, R(r.t, ctx), ctx);
        Real want = R(r.v, ctx);
        CAPTURE(r.t);
        CHECK(abs(got - want) < pow10(-40, ctx.work_bits()) * abs(want));
    }
}

TEST_CASE("J0/Y0/J1 against the MPFR oracle") {
    // mpfr_j0/y0/j1 are an independent arbitrary-precision implementation.
    const char* pts[] = {"0.25", "1.5", "7.5", "29.0", "61.5", "123.25"};
    for (const char* s : pts) {
        Real t = R(s, ctx);
        Real j0ref(ctx.work_bits()), y0ref(ctx.work_bits()), j1ref(ctx.work_bits());
        mpfr_j0(j0ref.raw(), t.raw(), MPFR_RNDN);
        mpfr_y0(y0ref.raw(), t.raw(), MPFR_RNDN);
        mpfr_j1(j1ref.raw(), t.raw(), MPFR_RNDN);
        CAPTURE(s);
        CHECK(abs(specfun::bessel(BesselKind::J0, t, ctx) - j0ref) < pow10(-40, t.prec()));
        CHECK(abs(specfun::bessel(BesselKind::Y0, t, ctx) - y0ref) < pow10(-40, t.prec()));
        CHECK(abs(specfun::bessel(BesselKind::J1, t, ctx) - j1ref) < pow10(-40, t.prec()));
    }
}

TEST_CASE("bessel edge cases and scaled variants") {
    long wb = ctx.work_bits();
    CHECK(specfun::bessel(BesselKind::I0, Real(0L, wb), ctx) == Real(1, wb));
    CHECK(specfun::bessel(BesselKind::J1, Real(0L, wb), ctx).is_zero());
    CHECK_THROWS_AS(specfun::bessel(BesselKind::K0, Real(0L, wb), ctx), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel(BesselKind::Y0, Real(0L, wb), ctx), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel(BesselKind::I0, Real(-1, wb), ctx), std::domain_error);

    Real t = R("61.3", ctx);
    CHECK(close(specfun::bessel_i0_scaled(t, ctx),
                R("0.0510590547271140947943242151543976924085977736", ctx), 40));
    CHECK(close(specfun::bessel_k0_scaled(t, ctx),
                R("0.159753805620750405009191961580050832295672933", ctx), 40));
    // e^(-t) I0(t) equals the scaled value in the series regime too
    Real ts = R("9.5", ctx);
    CHECK(close(specfun::bessel_i0_scaled(ts, ctx) * exp(ts),
                specfun::bessel(BesselKind::I0, ts, ctx), 40));
    CHECK(close(specfun::bessel_k1_scaled(ts, ctx) * exp(-ts),
                specfun::bessel(BesselKind::K1, ts, ctx), 40));
}

TEST_CASE("regime consistency at the crossover") {
    double tstar = specfun::bessel_crossover(ctx);
    Real t(ctx.work_bits());
    mpfr_set_d(t.raw(), tstar, MPFR_RNDN);
    for (BesselKind k : {BesselKind::J0, BesselKind::Y0, BesselKind::I0, BesselKind::K0,
                         BesselKind::J1, BesselKind::I1, BesselKind::K1}) {
        Real a = specfun::bessel_regime(k, t, ctx, false);
        Real b = specfun::bessel_regime(k, t, ctx, true);
        CHECK(abs(a - b) <= pow10(-(ctx.digits - 2), t.prec()) * max(Real(1, t.prec()), abs(a)));
    }
}

TEST_CASE("Wronskian I0 K1 + I1 K0 = 1/t") {
    // deterministic pseudo-random points in [0.1, 20]
    unsigned long s = 12345;
    for (int i = 0; i < 10; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        double d = 0.1 + (s >> 11) * (19.9 / 9007199254740992.0);
        Real t(ctx.work_bits());
        mpfr_set_d(t.raw(), d, MPFR_RNDN);
        Real w = specfun::bessel(BesselKind::I0, t, ctx) * specfun::bessel(BesselKind::K1, t, ctx) +
                 specfun::bessel(BesselKind::I1, t, ctx) * specfun::bessel(BesselKind::K0, t, ctx);
        CHECK(abs(w - 1 / t) < pow10(-(ctx.digits - 4), t.prec()));
    }
    // spec example: t = 5/4 gives exactly 4/5
    Real t = Real::from_ratio(5, 4, ctx.work_bits());
    Real w = specfun::bessel(BesselKind::I0, t, ctx) * specfun::bessel(BesselKind::K1, t, ctx) +
             specfun::bessel(BesselKind::I1, t, ctx) * specfun::bessel(BesselKind::K0, t, ctx);
    CHECK(close(w, Real::from_ratio(4, 5, ctx.work_bits()), 38));
}

TEST_CASE("hankel1_0") {
    Real x = R("2.25", ctx);
    Complex h = specfun::hankel1_0(x, ctx);
    CHECK(close(h.re, specfun::bessel(BesselKind::J0, x, ctx), 42));
    CHECK(close(h.im, specfun::bessel(BesselKind::Y0, x, ctx), 42));
    // |H|^2 pi x / 2 -> 1 + O(1/x)
    Real big = R("4000", ctx);
    Complex hb = specfun::hankel1_0(big, ctx);
    Real m = (hb.re * hb.re + hb.im * hb.im) * const_pi(ctx.work_bits()) * big / 2;
    CHECK(abs(m - 1) < Real::from_ratio(1, 1000, ctx.work_bits()));
    CHECK_THROWS_AS(specfun::hankel1_0(Real(0L, ctx.work_bits()), ctx), std::domain_error);
}

TEST_CASE("precision monotonicity") {
    PrecisionContext hi = ctx.with_digits(ctx.digits + 10);
    const char* pts[] = {"0.8", "17.5", "55.0"};
    for (const char* s : pts) {
        Real lo_v = specfun::bessel(BesselKind::K0, R(s, ctx), ctx);
        Real hi_v = specfun::bessel(BesselKind::K0, R(s, hi), hi);
        CHECK(abs(lo_v - hi_v) < pow10(-ctx.digits, hi_v.prec()) * abs(hi_v));
    }
}

TEST_CASE("hypergeometric series") {
    long wb = ctx.work_bits();
    CHECK(specfun::hyp_pfq({{1, 3}, {2, 3}}, {{1, 1}}, Real(0L, wb), ctx) == Real(1, wb));
    // 2F1(1/3, 2/3; 1; 0.17) against reference
    Real v = specfun::hyp_pfq({{1, 3}, {2, 3}}, {{1, 1}}, R("0.17", ctx), ctx);
    CHECK(close(v, R("1.04182821437720980963522584788842139432651488", ctx), 40));
    // Rogers 3F2 identity vs. Domb-number series at u = 1/10 (oracle: exact Domb numbers)
    Real u = Real::from_ratio(1, 10, wb);
    Real arg = 27 * u * u / (4 * pow(1 - u, 3));
    Real lhs = specfun::hyp_pfq({{1, 3}, {1, 2}, {2, 3}}, {{1, 1}, {1, 1}}, arg, ctx);
    auto domb = specfun::domb_numbers(120);
    Real rhs(wb), term(1, wb);
    Real u4 = u / 4;
    for (size_t n = 0; n < domb.size(); ++n) {
        Real c(wb);
        mpfr_set_z(c.raw(), domb[n].get_mpz_t(), MPFR_RNDN);
        rhs += c * term;
        term *= u4;
    }
    rhs *= (1 - u);
    CHECK(close(lhs, rhs, 38));
    CHECK_THROWS_AS(specfun::hyp_pfq({{1, 2}}, {}, Real(2, wb), ctx), std::domain_error);
}

TEST_CASE("domb numbers") {
    auto d = specfun::domb_numbers(5);
    CHECK(d[0] == 1);
    CHECK(d[1] == 4);
    CHECK(d[2] == 28);
    CHECK(d[3] == 256);
    CHECK(d[4] == 2716);
    CHECK(d[5] == 31504);
}
