#include "bmlab/moments.hpp"

#include "bmlab/specfun.hpp"
#include "test_util.hpp"

using namespace bmlab;
using namespace bmlab::moments;
using bmlab::testing::close;
using bmlab::testing::R;

static const PrecisionContext ctx;

namespace {
Real bologna(const PrecisionContext& c) {
    long p = c.work_bits();
    return specfun::gamma(Real::from_ratio(1, 15, p), c) * specfun::gamma(Real::from_ratio(2, 15, p), c) *
           specfun::gamma(Real::from_ratio(4, 15, p), c) * specfun::gamma(Real::from_ratio(8, 15, p), c) /
           (240 * sqrt(Real(5, p)));
}
}  // namespace

TEST_CASE("convergence predicate") {
    CHECK(MomentSpec{Family::IKM, 1, 4, 1}.convergent());
    CHECK(MomentSpec{Family::IKM, 4, 4, 1}.convergent());
    CHECK_FALSE(MomentSpec{Family::IKM, 4, 4, 3}.convergent());
    CHECK_FALSE(MomentSpec{Family::IKM, 2, 1, 1}.convergent());
    CHECK(MomentSpec{Family::JYM, 5, 0, 1}.convergent());
    CHECK_FALSE(MomentSpec{Family::JYM, 1, 0, 1}.convergent());
    CHECK_FALSE(MomentSpec{Family::JYM, 3, 0, 1}.convergent());
    CHECK_THROWS_AS(ikm(1, 1, 1, ctx), std::domain_error);
    CHECK_THROWS_AS(jym(1, 0, 1, ctx), std::domain_error);
}

TEST_CASE("ikm closed forms") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    auto v121 = ikm(1, 2, 1, ctx);
    CHECK(close(v121.value, pi / (3 * sqrt(Real(3, p))), 38));
    CHECK(abs(v121.value - pi / (3 * sqrt(Real(3, p)))) < v121.abs_error_estimate * 100 + pow10(-45, p));
    auto v131 = ikm(1, 3, 1, ctx);
    CHECK(close(v131.value, pi * pi / 16, 38));
    auto v041 = ikm(0, 4, 1, ctx);
    CHECK(close(v041.value, 7 * specfun::zeta_int(3, ctx) / 8, 38));
    auto v141 = ikm(1, 4, 1, ctx);
    CHECK(close(v141.value, bologna(ctx), 38));
}

TEST_CASE("ikm algebraic-tail cases") {
    long p = ctx.work_bits();
    // IKM(2,2;0): 2 >= 0+2 so convergent with a pure t^-2 tail
    auto v = ikm(2, 2, 0, ctx);
    CHECK(v.value > 0);
    CHECK(v.abs_error_estimate < pow10(-ctx.digits, p));
    // Domb odd moments: IKM(1,3;3) = pi^2/64, IKM(1,3;5) = 7 pi^2 / 256
    Real pi = const_pi(p);
    CHECK(close(ikm(1, 3, 3, ctx).value, pi * pi / 64, 38));
    CHECK(close(ikm(1, 3, 5, ctx).value, 7 * pi * pi / 256, 38));
}

TEST_CASE("K0^3 recursion and moment relation") {
    // (k+1)^4 c_k - 2(5k^2+20k+21) c_(k+2) + 9 c_(k+4) = 0 for c_k = IKM(0,3;k)
    long p = ctx.work_bits();
    Real c0 = ikm(0, 3, 0, ctx).value, c1 = ikm(0, 3, 1, ctx).value;
    Real c2 = ikm(0, 3, 2, ctx).value, c3 = ikm(0, 3, 3, ctx).value;
    Real c4 = ikm(0, 3, 4, ctx).value, c5 = ikm(0, 3, 5, ctx).value;
    CHECK(abs(c0 - 42 * c2 + 9 * c4) < pow10(-36, p));
    CHECK(abs(16 * c1 - 92 * c3 + 9 * c5) < pow10(-36, p));
    CHECK(close(c3, 2 * (2 * c1 - 1) / 3, 38));
}

TEST_CASE("jym random-walk relations") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    auto j5 = jym(5, 0, 1, ctx);
    CHECK(j5.accelerated);
    CHECK(close(pow(pi, 4) / 30 * j5.value, bologna(ctx), 15));
    auto j3 = jym(3, 0, 0, ctx);
    CHECK(close(j3.value, 4 / pow(pi, 3) * ikm(0, 3, 0, ctx).value, 15));
    auto j4 = jym(4, 0, 0, ctx);
    CHECK(close(j4.value, 4 / pow(pi, 3) * ikm(1, 3, 0, ctx).value, 15));
}

TEST_CASE("sum rules vanish") {
    long p = ctx.work_bits();
    CHECK(abs(sum_rule(3, 1, SumRuleBranch::EvenCombination, ctx)) < pow10(-30, p));
    CHECK(abs(sum_rule(2, 0, SumRuleBranch::EvenCombination, ctx)) < pow10(-30, p));
    CHECK(abs(sum_rule(4, 1, SumRuleBranch::OddCombination, ctx)) < pow10(-30, p));
    CHECK_THROWS_AS(sum_rule(3, 2, SumRuleBranch::EvenCombination, ctx), std::domain_error);
    CHECK_THROWS_AS(sum_rule(4, 1, SumRuleBranch::EvenCombination, ctx), std::domain_error);
}

TEST_CASE("bm_sequence near-integers") {
    long p = ctx.work_bits();
    struct Case { int m, n; long want; };
    // expected integers confirmed by direct quadrature of the defining
    // integral at 45 digits
    for (Case c : {Case{1, 1, 1}, Case{1, 2, 8}, Case{2, 1, 1}, Case{3, 1, 1}, Case{3, 2, 24}}) {
        Real v = bm_sequence(c.m, c.n, ctx);
        CHECK(abs(v - Real(c.want, p)) < pow10(-20, p));
    }
}

TEST_CASE("transform examples") {
    long p = ctx.work_bits();
    Real pi = const_pi(p);
    Real half = Real::from_ratio(1, 2, p);
    // Eq. (4.4): J-transform of I0 K0^2 at x = 1/2 equals the 2F1 form
    Real lhs = transform(TransformKernel::J, half, Integrand::product({{Factor::I0, 1}, {Factor::K0, 2}}, 1), ctx);
    Real x2 = half * half;
    Real arg = x2 * x2 * (9 + x2) / pow(3 + x2, 3);
    Real rhs = pi / sqrt(Real(3, p)) / (3 + x2) * specfun::hyp_pfq({{1, 3}, {2, 3}}, {{1, 1}}, arg, ctx);
    CHECK(close(lhs, rhs, 34));
    // p3 support: J-transform of J0^3 vanishes for x > 3
    Real x35 = Real::from_ratio(7, 2, p);
    Real v = transform(TransformKernel::J, x35, Integrand::product({{Factor::J0, 3}}, 1), ctx);
    CHECK(abs(v) < pow10(-15, p));
    // J0^4 transform vanishes for x >= 4
    Real x45 = Real::from_ratio(9, 2, p);
    Real v4 = transform(TransformKernel::J, x45, Integrand::product({{Factor::J0, 4}}, 1), ctx);
    CHECK(abs(v4) < pow10(-15, p));
    // I-kernel margin
    CHECK_THROWS_AS(transform(TransformKernel::I, Real::from_ratio(5, 2, p),
                              Integrand::product({{Factor::I0, 1}, {Factor::K0, 3}}, 1), ctx),
                    std::domain_error);
}

TEST_CASE("engine stability properties") {
    long p = ctx.work_bits();
    // segment doubling
    EngineOptions dflt;
    EngineOptions doubled;
    doubled.panel_order = 64;
    auto a = ikm(1, 4, 1, ctx, dflt);
    auto b = ikm(1, 4, 1, ctx, doubled);
    CHECK(abs(a.value - b.value) <= a.abs_error_estimate + b.abs_error_estimate + pow10(-46, p));
    // tail order stability
    EngineOptions t16;
    t16.tail_order = 16;
    auto c = ikm(3, 3, 1, ctx, dflt);
    auto d = ikm(3, 3, 1, ctx, t16);
    CHECK(abs(c.value - d.value) < pow10(-ctx.digits, p));
    // split-point independence: T and T + 5
    EngineOptions ta, tb2;
    ta.split_T = 120.0;
    tb2.split_T = 125.0;
    auto e = ikm(1, 4, 1, ctx, ta);
    auto f = ikm(1, 4, 1, ctx, tb2);
    CHECK(abs(e.value - f.value) < pow10(-(ctx.digits + 4), p));
    // positivity
    CHECK(ikm(2, 6, 1, ctx).value > 0);
    CHECK(ikm(0, 3, 0, ctx).value > 0);
}

TEST_CASE("wick identities at sample points") {
    long p = ctx.work_bits();
    Real half = Real::from_ratio(1, 2, p);
    auto [l1, r1] = wick_check(WickId::ITransIIKK, half, ctx);
    CHECK(close(l1, r1, 15));
    auto [l2, r2] = wick_check(WickId::ITransKKK, half, ctx);
    CHECK(close(l2, r2, 15));
    auto [l3, r3] = wick_check(WickId::JTransJJJJvsJJYY, Real(1, p), ctx);
    CHECK(close(l3, r3, 15));
    CHECK_THROWS_AS(wick_check(WickId::ITransIIKK, Real(2, p), ctx), std::domain_error);
}
