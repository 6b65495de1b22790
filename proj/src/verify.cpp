#include "bmlab/verify.hpp"

#include <mpfr.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bmlab/eichler.hpp"
#include "bmlab/moments.hpp"
#include "bmlab/specfun.hpp"

namespace bmlab::verify {

using eichler::ContourPath;
using eichler::EichlerSpec;
using moments::Factor;
using moments::Integrand;
using moments::SumRuleBranch;
using moments::TransformKernel;
using modular::NamedForm;

Real tight_tolerance(const PrecisionContext& ctx) {
    return pow10(-(ctx.digits - 8), ctx.work_bits());
}

Real loose_tolerance(const PrecisionContext& ctx) {
    int k = ctx.digits / 2 < 15 ? ctx.digits / 2 : 15;
    return pow10(-k, ctx.work_bits());
}

namespace {

using Pair = std::pair<Complex, Complex>;

Complex C(Real r) { return Complex(std::move(r)); }

Real bologna_Cc(const PrecisionContext& ctx) {
    long p = ctx.work_bits();
    Real g = specfun::gamma(Real::from_ratio(1, 15, p), ctx) * specfun::gamma(Real::from_ratio(2, 15, p), ctx) *
             specfun::gamma(Real::from_ratio(4, 15, p), ctx) * specfun::gamma(Real::from_ratio(8, 15, p), ctx);
    Real pi = const_pi(p);
    return g / (240 * sqrt(Real(5, p)) * pi * pi);
}

Real ikmv(int a, int b, int n, const PrecisionContext& ctx) { return moments::ikm(a, b, n, ctx).value; }
Real jymv(int a, int b, int n, const PrecisionContext& ctx) { return moments::jym(a, b, n, ctx).value; }

Integrand IK(std::initializer_list<std::pair<Factor, int>> fs, int tp) {
    return Integrand::product(fs, tp);
}

// worst-residual pair of a multi-point identity
Pair worst(const std::vector<Pair>& pts) {
    long p = pts[0].first.prec();
    size_t w = 0;
    Real best(-1, p);
    for (size_t i = 0; i < pts.size(); ++i) {
        Real scale = max(Real(1, p), max(abs(pts[i].first), abs(pts[i].second)));
        Real r = abs(pts[i].first - pts[i].second) / scale;
        if (r > best) {
            best = r;
            w = i;
        }
    }
    return pts[w];
}

// ---- modular sample machinery ----------------------------------------------

// |8 [eta2 eta6 / (eta1 eta3)]^3 (z)|: the level-6(+3) Hankel argument; real
// positive up to a phase that J0/I0/K0 kernels do not see.
Real xarg63(const Complex& z, const PrecisionContext& ctx) {
    static const std::vector<modular::EtaQuotientPart> q = {
        {mpq_class(8), {{2, 3}, {6, 3}, {1, -3}, {3, -3}}}};
    return abs(modular::eval_quotient(q, z, ctx));
}

// |theta(1 - 1/(3w)) / theta(3 - 1/w)|^2, the theta-quotient argument.
Real xarg_theta(const Complex& w, const PrecisionContext& ctx) {
    long p = w.prec();
    Complex one(1, p);
    Complex t1 = modular::theta_point(one - one / (w * 3), ctx);
    Complex t2 = modular::theta_point(Complex(3, p) - one / w, ctx);
    Complex c = t1 / t2;
    return abs(c * c);
}

// eta(3w) eta(2w)^6 / (eta(w)^3 eta(6w)^2), the weight-2 object of the
// level-6 theta parametrizations.
Complex w2quotient(const Complex& w, const PrecisionContext& ctx) {
    static const std::vector<modular::EtaQuotientPart> q = {
        {mpq_class(1), {{3, 1}, {2, 6}, {1, -3}, {6, -2}}}};
    return modular::eval_quotient(q, w, ctx);
}

Complex Z63v(const Complex& z, const PrecisionContext& ctx) {
    return modular::eval_form(NamedForm::Z63, modular::UpperHalfPoint(z), ctx);
}

Complex iy(const char* y, const PrecisionContext& ctx) {
    long p = ctx.work_bits() + 16;
    return Complex(Real(p), Real(y, p));
}
Complex half_iy(const char* y, const PrecisionContext& ctx) {
    long p = ctx.work_bits() + 16;
    return Complex(Real::from_ratio(1, 2, p), Real(y, p));
}
Complex neg_half_iy(const char* y, const PrecisionContext& ctx) {
    long p = ctx.work_bits() + 16;
    return Complex(Real::from_ratio(-1, 2, p), Real(y, p));
}
// z = 1/2 + (i/(2 sqrt3)) e^(i phi)
Complex phi_arc(int num, int den, const PrecisionContext& ctx) {
    long p = ctx.work_bits() + 16;
    Real pi = const_pi(p);
    Real phi = pi * num / den;
    Real r = 1 / (2 * sqrt(Real(3, p)));
    return Complex(Real::from_ratio(1, 2, p) - r * sin(phi), r * cos(phi));
}
// z = (1 + e^(i psi))/6
Complex psi_arc(int num, int den, const PrecisionContext& ctx) {
    long p = ctx.work_bits() + 16;
    Real pi = const_pi(p);
    Real psi = pi * num / den;
    return Complex((1 + cos(psi)) / 6, sin(psi) / 6);
}

Complex f46_vertical(std::vector<Complex> poly, const mpq_class& x0, Real y_from,
                     const PrecisionContext& ctx) {
    EichlerSpec s{NamedForm::F46, std::move(poly), ContourPath::vertical(x0, std::move(y_from))};
    return eichler::eichler_vertical(s, ctx);
}
Complex f66_vertical_zk(int k, const PrecisionContext& ctx) {
    long p = ctx.work_bits() + 16;
    std::vector<Complex> poly(k + 1, Complex(p));
    poly[k] = Complex(1, p);
    EichlerSpec s{NamedForm::F66, std::move(poly), ContourPath::vertical(mpq_class(0), Real(p))};
    return eichler::eichler_vertical(s, ctx);
}

std::vector<IdentityRecord> build_registry() {
    std::vector<IdentityRecord> recs;
    auto add = [&](std::string id, std::string desc, std::string anchor, ToleranceClass tc,
                   bool indep, std::function<Pair(const PrecisionContext&)> f) {
        recs.push_back(IdentityRecord{std::move(id), std::move(desc), std::move(anchor), tc, indep, std::move(f)});
    };
    const auto T = ToleranceClass::Tight;
    const auto L = ToleranceClass::Loose;

    // ---- S-suite: sum rules and the near-integer sequence ----
    struct SR { const char* id; int m, n; SumRuleBranch b; const char* a; };
    for (SR s : {SR{"S1_sumrule_m3n1_even", 3, 1, SumRuleBranch::EvenCombination,
                    "int 2Re[(pi I0 + i K0)^3] K0^3 t dt = 0"},
                 SR{"S2_sumrule_m5n1_even", 5, 1, SumRuleBranch::EvenCombination,
                    "int 2Re[(pi I0 + i K0)^5] K0^5 t dt = 0"},
                 SR{"S3_sumrule_m2n0_even", 2, 0, SumRuleBranch::EvenCombination,
                    "int 2Re[(pi I0 + i K0)^2] K0^2 dt = 0"},
                 SR{"S4_sumrule_m4n1_odd", 4, 1, SumRuleBranch::OddCombination,
                    "int 2Im[(pi I0 + i K0)^4] K0^4 t dt = 0"},
                 SR{"S5_sumrule_m3n0_odd", 3, 0, SumRuleBranch::OddCombination,
                    "int 2Im[(pi I0 + i K0)^3] K0^3 dt = 0"}}) {
        int m = s.m, n = s.n;
        SumRuleBranch b = s.b;
        add(s.id, "Bessel-moment sum rule vanishes", s.a, T, true,
            [m, n, b](const PrecisionContext& c) -> Pair {
                long p = c.work_bits();
                return {C(moments::sum_rule(m, n, b, c)), Complex(p)};
            });
    }
    for (int m = 1; m <= 3; ++m) {
        for (int n = 1; n <= 2; ++n) {
            std::string id = "S" + std::to_string(5 + (m - 1) * 2 + n) + "_bm_m" + std::to_string(m) +
                             "n" + std::to_string(n);
            add(id, "normalized odd-combination moment is a positive integer (rounded value reported)",
                "2^(1+2(n-1)(1-(-1)^m))/pi^(m+1) int 2Im[(pi I0+iK0)^m] K0^m (2t)^(2n+m-3) dt in Z",
                T, false, [m, n](const PrecisionContext& c) -> Pair {
                    Real v = moments::bm_sequence(m, n, c);
                    return {C(v), C(round_nearest(v))};
                });
        }
    }

    // ---- B-suite: the 5-Bessel family ----
    add("B1_bologna", "IKM(1,4;1) equals the gamma-product value",
        "int I0 K0^4 t dt = Gamma(1/15)Gamma(2/15)Gamma(4/15)Gamma(8/15)/(240 sqrt5)", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            return {C(ikmv(1, 4, 1, c)), C(pi * pi * bologna_Cc(c))};
        });
    add("B2_bologna_jym", "IKM(1,4;1) equals the 5-step random-walk moment",
        "int I0 K0^4 t dt = (pi^4/30) int J0^5 x dx", L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            return {C(ikmv(1, 4, 1, c)), C(pow(pi, 4) / 30 * jymv(5, 0, 1, c))};
        });
    add("B3_matrix_143", "IKM(1,4;3) against its Bologna-constant closed form",
        "IKM(1,4;3) = pi^2 (2/15)^2 (13C - 1/(10C))", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p), Cc = bologna_Cc(c);
            Real rhs = pi * pi * Real::from_ratio(4, 225, p) * (13 * Cc - 1 / (10 * Cc));
            return {C(ikmv(1, 4, 3, c)), C(rhs)};
        });
    add("B4_matrix_231", "IKM(2,3;1) against its closed form", "IKM(2,3;1) = sqrt15 pi C / 2", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real rhs = sqrt(Real(15, p)) * const_pi(p) * bologna_Cc(c) / 2;
            return {C(ikmv(2, 3, 1, c)), C(rhs)};
        });
    add("B5_matrix_233", "IKM(2,3;3) against its closed form",
        "IKM(2,3;3) = (sqrt15 pi/2)(2/15)^2 (13C + 1/(10C))", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real Cc = bologna_Cc(c);
            Real rhs = sqrt(Real(15, p)) * const_pi(p) / 2 * Real::from_ratio(4, 225, p) *
                       (13 * Cc + 1 / (10 * Cc));
            return {C(ikmv(2, 3, 3, c)), C(rhs)};
        });
    add("B6_det_intro", "2x2 determinant of the 5-Bessel matrix",
        "IKM(1,4;1)IKM(2,3;3) - IKM(2,3;1)IKM(1,4;3) = 2 pi^3 / sqrt(3^3 5^5)", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real lhs = ikmv(1, 4, 1, c) * ikmv(2, 3, 3, c) - ikmv(2, 3, 1, c) * ikmv(1, 4, 3, c);
            Real rhs = 2 * pow(const_pi(p), 3) / sqrt(Real(3 * 3 * 3 * 5 * 5 * 5 * 5 * 5, p));
            return {C(lhs), C(rhs)};
        });
    add("B7_ikm145", "IKM(1,4;5) against its closed form",
        "IKM(1,4;5) = pi^2 (4/15)^3 (43C - 19/(40C))", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real Cc = bologna_Cc(c), pi = const_pi(p);
            Real rhs = pi * pi * Real::from_ratio(64, 3375, p) * (43 * Cc - 19 / (40 * Cc));
            return {C(ikmv(1, 4, 5, c)), C(rhs)};
        });
    add("B8_ikm235", "IKM(2,3;5) against its closed form",
        "IKM(2,3;5) = (sqrt15 pi/2)(4/15)^3 (43C + 19/(40C))", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real Cc = bologna_Cc(c);
            Real rhs = sqrt(Real(15, p)) * const_pi(p) / 2 * Real::from_ratio(64, 3375, p) *
                       (43 * Cc + 19 / (40 * Cc));
            return {C(ikmv(2, 3, 5, c)), C(rhs)};
        });
    add("B9_ikm041", "IKM(0,4;1) equals 7 zeta(3)/8", "int K0^4 t dt = 7 zeta(3)/8", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(ikmv(0, 4, 1, c)), C(7 * specfun::zeta_int(3, c) / 8)};
        });
    add("B10_ikm121", "IKM(1,2;1) equals pi/(3 sqrt3)", "int I0 K0^2 t dt = pi/(3 sqrt3)", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            return {C(ikmv(1, 2, 1, c)), C(const_pi(p) / (3 * sqrt(Real(3, p))))};
        });
    add("B11_ikm131", "IKM(1,3;1) equals pi^2/16", "int I0 K0^3 t dt = pi^2/16", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            return {C(ikmv(1, 3, 1, c)), C(pi * pi / 16)};
        });
    add("B12_recursion_k0", "K0^3 moment recursion at k = 0",
        "c0 - 42 c2 + 9 c4 = 0 for ck = IKM(0,3;k)", T, false, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real lhs = ikmv(0, 3, 0, c) - 42 * ikmv(0, 3, 2, c) + 9 * ikmv(0, 3, 4, c);
            return {C(lhs), Complex(p)};
        });
    add("B13_recursion_k1", "K0^3 moment recursion at k = 1",
        "16 c1 - 92 c3 + 9 c5 = 0 for ck = IKM(0,3;k)", T, false, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real lhs = 16 * ikmv(0, 3, 1, c) - 92 * ikmv(0, 3, 3, c) + 9 * ikmv(0, 3, 5, c);
            return {C(lhs), Complex(p)};
        });
    add("B14_moment_rel_033", "IKM(0,3;3) in terms of IKM(0,3;1)",
        "IKM(0,3;3) = 2(2 IKM(0,3;1) - 1)/3", T, false, [](const PrecisionContext& c) -> Pair {
            return {C(ikmv(0, 3, 3, c)), C(2 * (2 * ikmv(0, 3, 1, c) - 1) / 3)};
        });
    add("B15_jym300", "3-step walk integral as a K0^3 moment",
        "int J0^3 dx = (4/pi^3) int K0^3 dt", L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            return {C(jymv(3, 0, 0, c)), C(4 / pow(const_pi(p), 3) * ikmv(0, 3, 0, c))};
        });
    add("B16_jym400", "4-step walk integral as an I0 K0^3 moment",
        "int J0^4 dx = (4/pi^3) int I0 K0^3 dt", L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            return {C(jymv(4, 0, 0, c)), C(4 / pow(const_pi(p), 3) * ikmv(1, 3, 0, c))};
        });

    // ---- L-suite: critical L-values ----
    add("L1_151_331", "4-loop sunrise: IKM(1,5;1) against IKM(3,3;1)",
        "(3/pi^2) IKM(1,5;1) = IKM(3,3;1)", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            return {C(3 / (pi * pi) * ikmv(1, 5, 1, c)), C(ikmv(3, 3, 1, c))};
        });
    add("L2_331_Lf46_2", "IKM(3,3;1) as a critical L-value", "IKM(3,3;1) = (3/2) L(f46, 2)", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(ikmv(3, 3, 1, c)), C(3 * eichler::lvalue(NamedForm::F46, 2, c) / 2)};
        });
    add("L3_241_Lf46_3", "IKM(2,4;1) as a critical L-value", "IKM(2,4;1) = (3/2) L(f46, 3)", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(ikmv(2, 4, 1, c)), C(3 * eichler::lvalue(NamedForm::F46, 3, c) / 2)};
        });
    add("L4_241_Lf46_1", "IKM(2,4;1) against L(f46, 1)", "IKM(2,4;1) = (pi^2/2) L(f46, 1)", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            return {C(ikmv(2, 4, 1, c)), C(pi * pi / 2 * eichler::lvalue(NamedForm::F46, 1, c))};
        });
    add("L5_441_Lf66_3", "IKM(4,4;1) as a critical L-value", "IKM(4,4;1) = L(f66, 3)", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(ikmv(4, 4, 1, c)), C(eichler::lvalue(NamedForm::F66, 3, c))};
        });
    add("L6_171_351", "6-loop sunrise: IKM(1,7;1) against IKM(3,5;1)",
        "IKM(1,7;1)/pi^2 = IKM(3,5;1)", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            return {C(ikmv(1, 7, 1, c) / (pi * pi)), C(ikmv(3, 5, 1, c))};
        });
    add("L7_351_Lf66_4", "IKM(3,5;1) as a critical L-value", "IKM(3,5;1) = (9/4) L(f66, 4)", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(ikmv(3, 5, 1, c)), C(9 * eichler::lvalue(NamedForm::F66, 4, c) / 4)};
        });
    add("L8_sumrule_441_261", "8-Bessel sum rule", "9 pi^2 IKM(4,4;1) - 14 IKM(2,6;1) = 0", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            return {C(9 * pi * pi * ikmv(4, 4, 1, c)), C(14 * ikmv(2, 6, 1, c))};
        });
    add("L9_261_Lf66_5", "IKM(2,6;1) as a critical L-value", "IKM(2,6;1) = (27/4) L(f66, 5)", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(ikmv(2, 6, 1, c)), C(27 * eichler::lvalue(NamedForm::F66, 5, c) / 4)};
        });
    add("L10_ratio_4over7", "Eichler-Shimura-Manin rational ratio",
        "L(f66,5) / (zeta(2) L(f66,3)) = 4/7", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real lhs = eichler::lvalue(NamedForm::F66, 5, c) /
                       (specfun::zeta_int(2, c) * eichler::lvalue(NamedForm::F66, 3, c));
            return {C(lhs), C(Real::from_ratio(4, 7, p))};
        });
    add("L11_bm_det", "6-Bessel Broadhurst-Mellit determinant",
        "IKM(1,5;1)IKM(2,4;3) - IKM(2,4;1)IKM(1,5;3) = pi^4/(2^6 3^2)", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real lhs = ikmv(1, 5, 1, c) * ikmv(2, 4, 3, c) - ikmv(2, 4, 1, c) * ikmv(1, 5, 3, c);
            return {C(lhs), C(pow(const_pi(p), 4) / 576)};
        });
    add("L12_lvalue_routes_46", "L(f46,3): split sums against contour quadrature",
        "sum-route L(f46,3) = contour-route L(f46,3)", T, true, [](const PrecisionContext& c) -> Pair {
            return {C(eichler::lvalue(NamedForm::F46, 3, c)),
                    C(eichler::lvalue_via_contour(NamedForm::F46, 3, c))};
        });
    add("L13_lvalue_routes_66", "L(f66,5): split sums against the explicit polynomial sum",
        "incomplete-gamma route = explicit exponential-sum route", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(eichler::lvalue(NamedForm::F66, 5, c)),
                    C(eichler::lvalue_explicit(NamedForm::F66, 5, c))};
        });

    // ---- E-suite: Eichler integrals ----
    add("E1_id240", "composite weight-4 contour integral equals 1",
        "240 int_(z0)^(i inf) [w4 kernel](2z-1) dz = 1 at z0 = 1/2 + i sqrt5/(2 sqrt3)", T, false,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Real y0 = sqrt(Real(5, p)) / (2 * sqrt(Real(3, p)));
            const auto& q = modular::form_qseries(NamedForm::EichlerKernel46,
                                                  modular::truncation_order(y0.to_double(), c));
            Complex v = eichler::vertical_termwise(q, mpq_class(1, 2), y0,
                                                   {Complex(-1, p), Complex(2, p)}, c);
            return {v * 240, Complex(1, p)};
        });
    add("E2_scriptE_0", "script-E value at the CM point", "E(z0) = pi^3/(8 sqrt15)", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex z0(Real::from_ratio(1, 2, p), sqrt(Real(5, p)) / (2 * sqrt(Real(3, p))));
            return {eichler::eichler_E(0, z0, c), C(pow(const_pi(p), 3) / (8 * sqrt(Real(15, p))))};
        });
    add("E3_scriptE_1", "script-E first derivative at the CM point",
        "E'(z0) = pi^3/(20 i) - 3 pi IKM(0,3;1)/(2 sqrt5 i)", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex z0(Real::from_ratio(1, 2, p), sqrt(Real(5, p)) / (2 * sqrt(Real(3, p))));
            Real pi = const_pi(p);
            Complex rhs(Real(p), 3 * pi * ikmv(0, 3, 1, c) / (2 * sqrt(Real(5, p))) - pow(pi, 3) / 20);
            return {eichler::eichler_E(1, z0, c), rhs};
        });
    add("E4_scriptE_2", "script-E second derivative at the CM point",
        "E''(z0) = (3 sqrt3 pi/5) IKM(0,3;1)", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex z0(Real::from_ratio(1, 2, p), sqrt(Real(5, p)) / (2 * sqrt(Real(3, p))));
            return {eichler::eichler_E(2, z0, c),
                    C(3 * sqrt(Real(3, p)) * const_pi(p) * ikmv(0, 3, 1, c) / 5)};
        });
    add("E5_scriptE_3", "script-E third derivative at the CM point", "E'''(z0) = 27 i sqrt5 pi c^2",
        T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex z0(Real::from_ratio(1, 2, p), sqrt(Real(5, p)) / (2 * sqrt(Real(3, p))));
            Real cc = sqrt(Real(5, p)) * bologna_Cc(c);
            return {eichler::eichler_E(3, z0, c),
                    Complex(Real(p), 27 * sqrt(Real(5, p)) * const_pi(p) * cc * cc)};
        });
    add("E6_scriptE_4", "script-E fourth derivative at the CM point",
        "E''''(z0) = -108 sqrt3 pi c^2 (3c+1)", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex z0(Real::from_ratio(1, 2, p), sqrt(Real(5, p)) / (2 * sqrt(Real(3, p))));
            Real cc = sqrt(Real(5, p)) * bologna_Cc(c);
            return {eichler::eichler_E(4, z0, c),
                    C(-108 * sqrt(Real(3, p)) * const_pi(p) * cc * cc * (3 * cc + 1))};
        });
    add("E7_241_f46_vertical", "IKM(2,4;1) as a weight-4 Eichler integral",
        "IKM(2,4;1) = (pi^3/i) int_0^(i inf) f46 dz", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex v = f46_vertical({Complex(1, p)}, mpq_class(0), Real(p), c);
            return {C(ikmv(2, 4, 1, c)), Complex(Real(p), -pow(const_pi(p), 3)) * v};
        });
    add("E8_331_f46_vertical", "IKM(3,3;1) as a weight-4 Eichler integral",
        "IKM(3,3;1) = -6 pi^2 int_0^(i inf) f46 z dz", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Real pi = const_pi(p);
            Complex v = f46_vertical({Complex(p), Complex(1, p)}, mpq_class(0), Real(p), c);
            return {C(ikmv(3, 3, 1, c)), v * (-6) * pi * pi};
        });
    add("E9_241_halfline", "IKM(2,4;1) from the Re z = -1/2 ray",
        "IKM(2,4;1) = (pi^3 i/3) int_(-1/2)^(-1/2+i inf) f46 dz", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex v = f46_vertical({Complex(1, p)}, mpq_class(-1, 2), Real(p), c);
            return {C(ikmv(2, 4, 1, c)), Complex(Real(p), pow(const_pi(p), 3) / 3) * v};
        });
    add("E10_jym601_f46", "6-step walk integral from two f46 rays",
        "int J0^6 t dt = (12/pi i) int_0^(i inf) f46 - (6/pi i) int_(1/2)^(1/2+i inf) f46", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Real pi = const_pi(p);
            Complex a = f46_vertical({Complex(1, p)}, mpq_class(0), Real(p), c);
            Complex b = f46_vertical({Complex(1, p)}, mpq_class(1, 2), Real(p), c);
            Complex rhs = Complex(Real(p), -1 / pi) * (a * 12 - b * 6);
            return {C(jymv(6, 0, 1, c)), rhs};
        });
    add("E11_261_f66_vertical", "IKM(2,6;1) as a weight-6 Eichler integral",
        "IKM(2,6;1) = (pi^5/(4i)) int_0^(i inf) f66 dz", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex v = f66_vertical_zk(0, c);
            return {C(ikmv(2, 6, 1, c)), Complex(Real(p), -pow(const_pi(p), 5) / 4) * v};
        });
    add("E12_2arc_sum0", "two-arc vanishing identity for f66",
        "int_(1/2+i/(2sqrt3))^(1/2+i inf) f66 (1-2z)^2 dz + int_arc f66 (1-4z+8z^2) dz = 0", T, false,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex one(1, p);
            Real y1 = 1 / (2 * sqrt(Real(3, p)));
            EichlerSpec vs{NamedForm::F66,
                           {one, Complex(Real(-4, p)), Complex(Real(4, p))},
                           ContourPath::vertical(mpq_class(1, 2), y1)};
            Complex vert = eichler::eichler_vertical(vs, c);
            Real pi = const_pi(p);
            EichlerSpec as{NamedForm::F66,
                           {one, Complex(Real(-4, p)), Complex(Real(8, p))},
                           ContourPath::arc(Complex(Real::from_ratio(1, 2, p), Real(p)), y1,
                                            pi / 3 + pi / 2, pi / 2)};
            Complex arc = eichler::eichler_arc(as, c);
            return {vert + arc, Complex(p)};
        });
    add("E13_z4_plus_z2", "vanishing combination of f66 moments",
        "int_0^(i inf) f66 z^4 dz + (2/7) int_0^(i inf) f66 z^2 dz = 0", T, false,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex v = f66_vertical_zk(4, c) + f66_vertical_zk(2, c) * Real::from_ratio(2, 7, p);
            return {v, Complex(p)};
        });
    add("E14_G_243", "IKM(2,4;3) from the Broadhurst G-integral",
        "IKM(2,4;3) = (pi^3/i) int_(1/2)^(1/2+i inf) G/96 dz", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(eichler::broadhurst_G(0, c)), C(ikmv(2, 4, 3, c))};
        });
    add("E15_G_153", "IKM(1,5;3) from the Broadhurst G-integral",
        "IKM(1,5;3) = -3 pi^4 int_(1/2)^(1/2+i inf) (G/96)(z - 1/2) dz", T, true,
        [](const PrecisionContext& c) -> Pair {
            return {C(eichler::broadhurst_G(1, c)), C(ikmv(1, 5, 3, c))};
        });
    add("E16_jym801_f66", "8-step walk integral as an f66 moment",
        "int J0^8 x dx = (70/(9 pi i)) int_0^(i inf) f66 dz", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex rhs = Complex(Real(p), Real::from_ratio(-70, 9, p) / const_pi(p)) * f66_vertical_zk(0, c);
            return {C(jymv(8, 0, 1, c)), rhs};
        });
    add("E17_j8_triple_a", "equivalence of two f66 moments for the 8-step walk",
        "(70/9) int f66 dz = -80 int f66 z^2 dz", T, false, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            return {f66_vertical_zk(0, c) * Real::from_ratio(70, 9, p),
                    f66_vertical_zk(2, c) * Real(-80, p)};
        });
    add("E18_j8_triple_b", "equivalence of two more f66 moments for the 8-step walk",
        "280 int f66 z^4 dz = -80 int f66 z^2 dz", T, false, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            return {f66_vertical_zk(4, c) * Real(280, p), f66_vertical_zk(2, c) * Real(-80, p)};
        });
    add("E19_sunrise6_171", "IKM(1,7;1) as a weight-6 Eichler integral",
        "IKM(1,7;1) = -pi^6 int_0^(i inf) f66 z dz", T, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            return {C(ikmv(1, 7, 1, c)), f66_vertical_zk(1, c) * (-pow(const_pi(p), 6))};
        });
    add("E20_151_halfline", "IKM(1,5;1) from the Re z = -1/2 ray",
        "IKM(1,5;1) = (pi^4/2) int_(-1/2)^(-1/2+i inf) f46 (1+2w) dw", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Complex v = f46_vertical({Complex(1, p), Complex(2, p)}, mpq_class(-1, 2), Real(p), c);
            return {C(ikmv(1, 5, 1, c)), v * pow(const_pi(p), 4) / 2};
        });
    add("E21_fricke_reflection", "Fricke reflection of an f46 moment",
        "6 pi^3 i int_(i/sqrt6)^(i inf) f46 z^2 dz = -pi^3 i int_0^(i/sqrt6) f46 dz", T, false,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Real y6 = 1 / sqrt(Real(6, p));
            Complex upper = f46_vertical({Complex(p), Complex(p), Complex(1, p)}, mpq_class(0), y6, c);
            Complex whole = f46_vertical({Complex(1, p)}, mpq_class(0), Real(p), c);
            Complex lower = whole - f46_vertical({Complex(1, p)}, mpq_class(0), y6, c);
            return {upper * 6, -lower};
        });

    // ---- H-suite: modular parametrizations of Hankel-type transforms ----
    add("H1_ikkk_hankel", "J-transform of I0 K0^3 parametrized on the imaginary axis",
        "int J0(x t) I0 K0^3 t dt = (pi^2/16) Z63(iy), x = 8[eta2 eta6/(eta1 eta3)]^3(iy)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.3", "0.6", "1.0"}) {
                Complex z = iy(y, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::I0, 1}, {Factor::K0, 3}}, 1), c);
                Complex rhs = Z63v(z, c) * const_pi(p) * const_pi(p) / 16;
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H2_ikkk_itrans", "I-transform of I0 K0^3 on the Re z = 1/2 ray",
        "int I0(x t) I0 K0^3 t dt = (pi^2/16) Z63(z), z = 1/2 + iy, x in (0,2)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.6", "0.8", "1.0"}) {
                Complex z = half_iy(y, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::I, x, IK({{Factor::I0, 1}, {Factor::K0, 3}}, 1), c);
                Complex rhs = Z63v(z, c) * const_pi(p) * const_pi(p) / 16;
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H3_jjjj_hankel", "J-transform of J0^4 on the Re z = 1/2 ray",
        "int J0(x t) J0^4 t dt = 3(2z-1) Z63(z)/(4 pi i), x in (0,2)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.6", "0.8", "1.0"}) {
                Complex z = half_iy(y, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 4}}, 1), c);
                Complex rhs = (z * 2 - Real(1, p)) * Z63v(z, c) * 3 / (4 * const_pi(p));
                rhs = Complex(rhs.im, -rhs.re);  // divide by i
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H4_jikk_2f1", "hypergeometric evaluation of the I0 K0^2 Hankel transform",
        "int J0(x t) I0 K0^2 t dt = (pi/sqrt3) (3+x^2)^-1 2F1(1/3,2/3;1; x^4(9+x^2)/(3+x^2)^3)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (int num : {1, 3, 5}) {
                Real x = Real::from_ratio(num, 2, p);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1), c);
                Real x2 = x * x;
                Real arg = x2 * x2 * (9 + x2) / pow(3 + x2, 3);
                Real rhs = const_pi(p) / sqrt(Real(3, p)) / (3 + x2) *
                           specfun::hyp_pfq({{1, 3}, {2, 3}}, {{1, 1}}, arg, c);
                pts.push_back({C(lhs), C(rhs)});
            }
            return worst(pts);
        });
    add("H5_ikk_theta", "theta-parametrized Hankel transform of I0 K0^2",
        "int J0(x t) I0 K0^2 t dt = (pi/(3 sqrt3)) eta(3w)eta(2w)^6/(eta(w)^3 eta(6w)^2), w = -1/2 + iy",
        L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.3", "0.6", "1.0"}) {
                Complex w = neg_half_iy(y, c);
                Real x = xarg_theta(w, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1), c);
                Complex rhs = w2quotient(w, c) * const_pi(p) / (3 * sqrt(Real(3, p)));
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H6_jkkk_yikk", "J- and Y-transform combination at level 6",
        "int J0(xt) K0^3 t dt - (3pi/2) int Y0(xt) I0 K0^2 t dt = pi^2 (2w+1)/(2 sqrt3 i) [w-quotient]",
        L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.3", "0.6", "1.0"}) {
                Complex w = neg_half_iy(y, c);
                Real x = xarg_theta(w, c);
                Real pi = const_pi(p);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::K0, 3}}, 1), c) -
                           3 * pi / 2 *
                               moments::transform(TransformKernel::Y, x, IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1), c);
                Complex num = (w * 2 + Real(1, p)) * w2quotient(w, c) * pi * pi / (2 * sqrt(Real(3, p)));
                Complex rhs(num.im, -num.re);  // /i
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H7_ikkk_kikk", "I- and K-transform combination at level 6",
        "int I0(xt) K0^3 t dt + 3 int K0(xt) I0 K0^2 t dt = pi^2 w/(sqrt3 i) [w-quotient], w = iy",
        L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.4", "0.6", "1.0"}) {
                Complex w = iy(y, c);
                Real x = xarg_theta(w, c);
                Real pi = const_pi(p);
                Real lhs = moments::transform(TransformKernel::I, x, IK({{Factor::K0, 3}}, 1), c) +
                           3 * moments::transform(TransformKernel::K, x, IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1), c);
                Complex num = w * w2quotient(w, c) * pi * pi / sqrt(Real(3, p));
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H8_jjjy_yjjj", "J- and Y-transforms of 3-step walk products",
        "3 int J0(xt) J0^2 Y0 t dt + int Y0(xt) J0^3 t dt = -4w/(sqrt3 pi i) [w-quotient], w = iy",
        L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.4", "0.6", "1.0"}) {
                Complex w = iy(y, c);
                Real x = xarg_theta(w, c);
                Real pi = const_pi(p);
                Real lhs = 3 * moments::transform(TransformKernel::J, x, IK({{Factor::J0, 2}, {Factor::Y0, 1}}, 1), c) +
                           moments::transform(TransformKernel::Y, x, IK({{Factor::J0, 3}}, 1), c);
                Complex num = w * w2quotient(w, c) * (-4) / (sqrt(Real(3, p)) * pi);
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H9_p3_small", "3-step walk density on (0,1), theta-parametrized",
        "int J0(xt) J0^3 t dt = (2/(sqrt3 pi)) [w-quotient], w = iy", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.4", "0.6", "1.0"}) {
                Complex w = iy(y, c);
                Real x = xarg_theta(w, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 3}}, 1), c);
                Complex rhs = w2quotient(w, c) * 2 / (sqrt(Real(3, p)) * const_pi(p));
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H10_p3_medium", "3-step walk density on (1,3) along the geodesic arc",
        "int J0(xt) J0^3 t dt = (2(1-3w)/(sqrt3 pi)) [w-quotient], w = (1+e^(i phi))/6", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (auto [n, d] : {std::pair<int, int>{5, 12}, {1, 2}, {2, 3}}) {
                Complex w = psi_arc(n, d, c);
                Real x = xarg_theta(w, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 3}}, 1), c);
                Complex rhs = (Complex(1, p) - w * 3) * w2quotient(w, c) * 2 / (sqrt(Real(3, p)) * const_pi(p));
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H11_p3_support", "3-step walk density vanishes beyond x = 3",
        "int J0(7t/2) J0^3 t dt = 0", L, false, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Real x = Real::from_ratio(7, 2, p);
            return {C(moments::transform(TransformKernel::J, x, IK({{Factor::J0, 3}}, 1), c)), Complex(p)};
        });
    add("H12_jjjj_support", "4-step walk transform vanishes beyond x = 4",
        "int J0(9t/2) J0^4 t dt = 0", L, false, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            Real x = Real::from_ratio(9, 2, p);
            return {C(moments::transform(TransformKernel::J, x, IK({{Factor::J0, 4}}, 1), c)), Complex(p)};
        });
    add("H13_jjjj_high", "J-transform of J0^4 on the geodesic arc, x in (2,4)",
        "int J0(xt) J0^4 t dt = (1-6z+12z^2) Z63(z)/(4 pi i), z on the phi-arc", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (auto [n, d] : {std::pair<int, int>{1, 12}, {1, 6}, {1, 4}}) {
                Complex z = phi_arc(n, d, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 4}}, 1), c);
                Complex num = (Complex(1, p) - z * 6 + z * z * 12) * Z63v(z, c) / (4 * const_pi(p));
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H14_jjyy_hankel", "J-transform of J0^2 Y0^2 on the Re z = 1/2 ray",
        "int J0(xt) J0^2 Y0^2 t dt = (2z-1) Z63(z)/(4 pi i)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.6", "0.8", "1.0"}) {
                Complex z = half_iy(y, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 2}, {Factor::Y0, 2}}, 1), c);
                Complex num = (z * 2 - Real(1, p)) * Z63v(z, c) / (4 * const_pi(p));
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H15_jjyy_psi", "J-transform of J0^2 Y0^2 on the psi-arc, x >= 4",
        "int J0(xt) J0^2 Y0^2 t dt = -z(1-3z) Z63(z)/(pi i), z = (1+e^(i psi))/6", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (auto [n, d] : {std::pair<int, int>{5, 12}, {1, 2}, {2, 3}}) {
                Complex z = psi_arc(n, d, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 2}, {Factor::Y0, 2}}, 1), c);
                Complex num = (z * (Complex(1, p) - z * 3)) * Z63v(z, c) * (-1) / const_pi(p);
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H16_j3y_small", "J-transform of J0^3 Y0 on the Re z = 1/2 ray",
        "int J0(xt) J0^3 Y0 t dt = -Z63(z)/(4 pi)", L, true, [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.6", "0.8", "1.0"}) {
                Complex z = half_iy(y, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 3}, {Factor::Y0, 1}}, 1), c);
                Complex rhs = Z63v(z, c) * (-1) / (4 * const_pi(p));
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H17_j3y_mid", "J-transform of J0^3 Y0 on the phi-arc",
        "int J0(xt) J0^3 Y0 t dt = (1-6z+6z^2) Z63(z)/(4 pi)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (auto [n, d] : {std::pair<int, int>{1, 12}, {1, 6}, {1, 4}}) {
                Complex z = phi_arc(n, d, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 3}, {Factor::Y0, 1}}, 1), c);
                Complex rhs = (Complex(1, p) - z * 6 + z * z * 6) * Z63v(z, c) / (4 * const_pi(p));
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H18_j3y_large", "J-transform of J0^3 Y0 on the psi-arc",
        "int J0(xt) J0^3 Y0 t dt = -3 z^2 Z63(z)/(2 pi)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (auto [n, d] : {std::pair<int, int>{5, 12}, {1, 2}, {2, 3}}) {
                Complex z = psi_arc(n, d, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::J0, 3}, {Factor::Y0, 1}}, 1), c);
                Complex rhs = z * z * Z63v(z, c) * (-3) / (2 * const_pi(p));
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H19_ikkkk_kikkk", "I- and K-transform combination for the 5-Bessel family",
        "int I0(xt) K0^4 t dt + 4 int K0(xt) I0 K0^3 t dt = pi^3 (2z-1) Z63(z)/(8i)", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.6", "0.8", "1.0"}) {
                Complex z = half_iy(y, c);
                Real x = xarg63(z, c);
                Real pi = const_pi(p);
                Real lhs = moments::transform(TransformKernel::I, x, IK({{Factor::K0, 4}}, 1), c) +
                           4 * moments::transform(TransformKernel::K, x, IK({{Factor::I0, 1}, {Factor::K0, 3}}, 1), c);
                Complex num = (z * 2 - Real(1, p)) * Z63v(z, c) * pow(pi, 3) / 8;
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H20_jkkkk_yikkk", "J- and Y-transform combination for the 5-Bessel family",
        "int J0(xt) K0^4 t dt - 2 pi int Y0(xt) I0 K0^3 t dt = pi^3 z Z63(z)/(4i), z = iy", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.3", "0.6", "1.0"}) {
                Complex z = iy(y, c);
                Real x = xarg63(z, c);
                Real pi = const_pi(p);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::K0, 4}}, 1), c) -
                           2 * pi * moments::transform(TransformKernel::Y, x, IK({{Factor::I0, 1}, {Factor::K0, 3}}, 1), c);
                Complex num = z * Z63v(z, c) * pow(pi, 3) / 4;
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H21_i2k2_param", "J-transform of I0^2 K0^2, the Hilbert-reduced form",
        "int J0(xt) I0^2 K0^2 t dt = pi z Z63(z)/(4i), z = iy", L, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits() + 16;
            std::vector<Pair> pts;
            for (const char* y : {"0.3", "0.6", "1.0"}) {
                Complex z = iy(y, c);
                Real x = xarg63(z, c);
                Real lhs = moments::transform(TransformKernel::J, x, IK({{Factor::I0, 2}, {Factor::K0, 2}}, 1), c);
                Complex num = z * Z63v(z, c) * const_pi(p) / 4;
                Complex rhs(num.im, -num.re);
                pts.push_back({C(lhs), rhs});
            }
            return worst(pts);
        });
    add("H22_domb_moments", "odd I0 K0^3 moments through Domb numbers",
        "int I0 K0^3 t^(2n+1) dt = (pi^2/16)(n!/4^n)^2 D_n", T, true,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Real pi = const_pi(p);
            std::vector<Pair> pts;
            auto D = specfun::domb_numbers(2);
            Real d1(p), d2(p);
            mpfr_set_z(d1.raw(), D[1].get_mpz_t(), MPFR_RNDN);
            mpfr_set_z(d2.raw(), D[2].get_mpz_t(), MPFR_RNDN);
            pts.push_back({C(ikmv(1, 3, 3, c)), C(pi * pi / 16 / 16 * d1)});
            pts.push_back({C(ikmv(1, 3, 5, c)), C(pi * pi / 16 * Real::from_ratio(4, 256, p) * d2)});
            return worst(pts);
        });

    // ---- W-suite: Wick rotations, Parseval fusions, Hilbert cancelation ----
    struct WC { const char* id; moments::WickId w; const char* x; const char* a; };
    for (WC w : {WC{"W1_241_jym601", moments::WickId::Ikm241ViaJ6, "0",
                    "IKM(2,4;1) = (pi^4/30) JYM(6,0;1)"},
                 WC{"W2_151_jym511", moments::WickId::Ikm151ViaJ5Y, "0",
                    "IKM(1,5;1) = -(pi^5/12) JYM(5,1;1)"},
                 WC{"W3_iikk_x", moments::WickId::ITransIIKK, "0.5",
                    "int I0(xt) I0 K0^2 t dt = (pi^2/6) int J0(xt) J0^3 t dt on [0,1)"},
                 WC{"W4_ikkk_x", moments::WickId::ITransKKK, "0.5",
                    "int I0(xt) K0^3 t dt = -(pi^3/8) int J0(xt) Y0 (3J0^2 - Y0^2) t dt on [0,3)"},
                 WC{"W5_kikk_x", moments::WickId::KTransIKK, "0.5",
                    "3 int K0(xt) I0K0^2 t dt = -(pi^3/8) int J0(xt) Y0(3J0^2+Y0^2) t dt - (pi^3/4) int Y0(xt) J0^3 t dt"},
                 WC{"W6_261_j6_wick", moments::WickId::Ikm261ViaJ6, "0",
                    "(2/pi)^6 IKM(2,6;1) = -(8/7) int J0^6 (J0^2 - 7 Y0^2) x dx"},
                 WC{"W7_441_j6_wick", moments::WickId::Ikm441ViaJ6, "0",
                    "(2/pi)^4 IKM(4,4;1) = -(4/5) int J0^6 (J0^2 - 5 Y0^2) x dx"},
                 WC{"W8_jym441_j6", moments::WickId::Jym441ViaJ6, "0",
                    "JYM(4,4;1) = -(1/5) int J0^6 (J0^2 - 10 Y0^2) x dx"},
                 WC{"W9_jjjj_jjyy_x1", moments::WickId::JTransJJJJvsJJYY, "1",
                    "int J0(xt) J0^4 t dt = 3 int J0(xt) J0^2 Y0^2 t dt on [0,2]"},
                 WC{"W10_iikkk_j3y_x1", moments::WickId::ITransIKKKvsJ3Y, "1",
                    "(2/pi)^3 int I0(xt) I0 K0^3 t dt = -2 int J0(xt) J0^3 Y0 t dt on [0,2]"}}) {
        moments::WickId wid = w.w;
        std::string xs = w.x;
        add(w.id, "Wick-rotation identity compared by independent quadratures", w.a, L, true,
            [wid, xs](const PrecisionContext& c) -> Pair {
                long p = c.work_bits() + 16;
                auto [l, r] = moments::wick_check(wid, Real(xs.c_str(), p), c);
                return {C(l), C(r)};
            });
    }
    add("W11_parseval_241", "Parseval fusion of two I0 K0^2 transforms",
        "int |int J0(xt) I0 K0^2 t dt|^2 x dx = IKM(2,4;1)", L, true,
        [](const PrecisionContext& c) -> Pair {
            Integrand f = IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1);
            return {C(moments::parseval_fuse(f, f, c)), C(ikmv(2, 4, 1, c))};
        });
    add("W12_parseval_261", "Parseval fusion of two I0 K0^3 transforms",
        "int |int J0(xt) I0 K0^3 t dt|^2 x dx = IKM(2,6;1)", L, true,
        [](const PrecisionContext& c) -> Pair {
            Integrand f = IK({{Factor::I0, 1}, {Factor::K0, 3}}, 1);
            return {C(moments::parseval_fuse(f, f, c)), C(ikmv(2, 6, 1, c))};
        });
    add("W13_parseval_jym601", "Parseval fusion of two 3-step walk transforms",
        "int [int J0(xt) J0^3 t dt]^2 x dx = JYM(6,0;1)", L, true,
        [](const PrecisionContext& c) -> Pair {
            Integrand f = IK({{Factor::J0, 3}}, 1);
            return {C(moments::parseval_fuse(f, f, c)), C(jymv(6, 0, 1, c))};
        });
    add("W14_hilbert_cancel", "fused J- and Y-transforms of I0 K0^2 cancel",
        "int [J-transform](x) [Y-transform](x) x dx = 0 for F = I0 K0^2", L, false,
        [](const PrecisionContext& c) -> Pair {
            long p = c.work_bits();
            Integrand f = IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1);
            return {C(moments::hilbert_fuse(f, c)), Complex(p)};
        });

    return recs;
}

}  // namespace

const std::vector<IdentityRecord>& registry() {
    static const std::vector<IdentityRecord> recs = build_registry();
    return recs;
}

namespace {

VerificationResult evaluate(const IdentityRecord& rec, const PrecisionContext& ctx) {
    VerificationResult res;
    res.id = rec.id;
    res.description = rec.description;
    res.paper_anchor = rec.paper_anchor;
    long p = ctx.work_bits();
    res.tolerance = rec.tolerance_class == ToleranceClass::Tight ? tight_tolerance(ctx)
                                                                 : loose_tolerance(ctx);
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [lhs, rhs] = rec.eval(ctx);
        res.lhs = lhs;
        res.rhs = rhs;
        res.abs_residual = abs(lhs - rhs);
        Real scale = max(abs(lhs), abs(rhs));
        res.rel_residual = scale.is_zero() ? res.abs_residual : res.abs_residual / scale;
        res.pass = res.abs_residual <= res.tolerance * max(Real(1, p), scale);
    } catch (const std::exception& e) {
        res.error = std::string(rec.id) + ": " + e.what();
        res.pass = false;
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace

VerificationResult run(const std::string& id, const PrecisionContext& ctx) {
    for (const auto& rec : registry()) {
        if (rec.id == id) {
            VerificationResult r = evaluate(rec, ctx);
            if (!r.error.empty()) throw std::runtime_error(r.error);
            return r;
        }
    }
    throw std::invalid_argument("run: unknown identity id: " + id);
}

std::vector<VerificationResult> run_suite(const std::string& filter, const PrecisionContext& ctx,
                                          int parallelism) {
    const auto& recs = registry();
    std::vector<size_t> chosen;
    for (size_t i = 0; i < recs.size(); ++i) {
        if (filter == "all" || recs[i].id.rfind(filter, 0) == 0) chosen.push_back(i);
    }
    std::vector<VerificationResult> out(chosen.size());
    if (parallelism < 1) parallelism = 1;
    if (!mpfr_buildopt_tls_p()) parallelism = 1;  // constant caches are global without TLS
    if (parallelism == 1) {
        for (size_t j = 0; j < chosen.size(); ++j) out[j] = evaluate(recs[chosen[j]], ctx);
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t j = next.fetch_add(1);
            if (j >= chosen.size()) break;
            out[j] = evaluate(recs[chosen[j]], ctx);
        }
        mpfr_free_cache();
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < parallelism; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace bmlab::verify
