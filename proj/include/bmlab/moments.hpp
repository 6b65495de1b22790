#pragma once

#include <array>
#include <optional>
#include <utility>

#include "bmlab/precision.hpp"
#include "bmlab/real.hpp"

namespace bmlab::moments {

enum class Family { IKM, JYM };

// (family, exponent pair, power of t) identifying one Bessel moment.
struct MomentSpec {
    Family family;
    int e1 = 0;     // a or alpha
    int e2 = 0;     // b or beta
    int power = 0;  // n or nu
    bool convergent() const;
};

enum class Factor : int { J0 = 0, Y0, I0, K0, J1, I1, K1 };
constexpr int kFactorCount = 7;

enum class TransformKernel { J, Y, K, I };

// Product of Bessel factors times t^tpow, with an optional outer kernel
// kernel(scale * t). Evaluated through the scaled modified-Bessel internals,
// so only one exponential e^(envelope * t) is ever formed.
struct Integrand {
    std::array<int, kFactorCount> exponents{};
    int tpow = 0;
    bool has_kernel = false;
    TransformKernel kernel = TransformKernel::J;
    Real kernel_scale;

    static Integrand product(std::initializer_list<std::pair<Factor, int>> factors, int tpow);

    int exponent(Factor f) const { return exponents[static_cast<int>(f)]; }
    // growth-minus-decay rate of the I/K part (kernel excluded)
    int factor_envelope() const;
    // number of oscillatory (J/Y) factors, kernel excluded
    int oscillatory_count() const;
    bool pure_ik() const;  // no J/Y factors and no kernel
};

struct QuadratureReport {
    Real value;
    Real abs_error_estimate;
    long segments = 0;
    bool accelerated = false;
};

// Engine knobs used by the stability property tests; defaults reproduce the
// published runs.
struct EngineOptions {
    std::optional<double> split_T;  // series/tail split override
    std::optional<int> tail_order;
    int panel_order = 32;
};

// IKM(a,b;n) = int_0^inf I0^a K0^b t^n dt. Finite part by double-exponential
// and Gauss-Legendre panels; the [T, inf) tail integrates the symbolic
// product asymptotics term by term (incomplete-gamma pieces).
QuadratureReport ikm(int a, int b, int n, const PrecisionContext& ctx, const EngineOptions& opt = {});

// JYM(alpha,beta;nu) = int_0^inf J0^alpha Y0^beta t^nu dt. The oscillatory
// tail is partitioned at t_k = T + k pi/2 and the partial sums are
// Wynn-epsilon accelerated.
QuadratureReport jym(int alpha, int beta, int nu, const PrecisionContext& ctx, const EngineOptions& opt = {});

// General integral of an Integrand over (0, inf); the workhorse behind the
// operations above (exposed for the identity registry).
QuadratureReport integrate(const Integrand& f, const PrecisionContext& ctx, const EngineOptions& opt = {});

enum class SumRuleBranch { EvenCombination, OddCombination };

// Bailey-Borwein-Broadhurst-Glasser sum rules: the integral of
// 2 Re[(pi I0 + i K0)^m] K0^m t^n (even) or 2 Im[...] K0^m t^n (odd),
// which vanishes under the stated parity conditions.
Real sum_rule(int m, int n, SumRuleBranch branch, const PrecisionContext& ctx);

// Broadhurst-Mellit normalized odd-combination moment; evaluates to a
// positive integer for every m, n >= 1 (the caller checks integrality).
Real bm_sequence(int m, int n, const PrecisionContext& ctx);

// int_0^inf kernel(x t) f(t) t dt.
Real transform(TransformKernel kernel, const Real& x, const Integrand& f, const PrecisionContext& ctx);

// Parseval-Plancherel fusion int_0^inf (J f_a)(x) (J f_b)(x) x dx at reduced
// precision (digits/2); the outer tail is handled by a fitted log-power
// expansion integrated in closed form.
Real parseval_fuse(const Integrand& fa, const Integrand& fb, const PrecisionContext& ctx);

// Fusion of the J- and Y-transforms of the same function (the Hilbert
// cancelation consequence; expected ~ 0 for F = I0 K0^2).
Real hilbert_fuse(const Integrand& f, const PrecisionContext& ctx);

// Wick-rotation identities; run(id) evaluates both sides independently.
enum class WickId {
    Ikm241ViaJ6,      // IKM(2,4;1) = pi^4/30 JYM(6,0;1)
    Ikm151ViaJ5Y,     // IKM(1,5;1) = -pi^5/12 JYM(5,1;1)
    ITransIIKK,       // int I0(xt) I0 K0^2 t = pi^2/6 int J0(xt) J0^3 t, x in [0,1)
    ITransKKK,        // int I0(xt) K0^3 t = -pi^3/8 int J0(xt) Y0(3J0^2-Y0^2) t, x in [0,3)
    KTransIKK,        // 3 int K0(xt) I0K0^2 t = -pi^3/8 int J0(xt) Y0(3J0^2+Y0^2) t - pi^3/4 int Y0(xt) J0^3 t
    Ikm261ViaJ6,      // (2/pi)^6 IKM(2,6;1) = -8/7 int J0^6 (J0^2 - 7 Y0^2) x dx
    Ikm441ViaJ6,      // (2/pi)^4 IKM(4,4;1) = -4/5 int J0^6 (J0^2 - 5 Y0^2) x dx
    Jym441ViaJ6,      // JYM(4,4;1) = -1/5 int J0^6 (J0^2 - 10 Y0^2) x dx
    JTransJJJJvsJJYY, // int J0(xt) J0^4 t = 3 int J0(xt) J0^2 Y0^2 t, x in [0,2]
    ITransIKKKvsJ3Y,  // (2/pi)^3 int I0(xt) I0K0^3 t = -2 int J0(xt) J0^3 Y0 t, x in [0,2]
};
std::pair<Real, Real> wick_check(WickId id, const Real& sample_x, const PrecisionContext& ctx);

}  // namespace bmlab::moments
