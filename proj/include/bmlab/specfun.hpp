#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "bmlab/complex.hpp"
#include "bmlab/precision.hpp"
#include "bmlab/real.hpp"

namespace bmlab::specfun {

enum class BesselKind { J0, Y0, I0, K0, J1, I1, K1 };

// Euler Gamma(x) for x > 0.
Real gamma(const Real& x, const PrecisionContext& ctx);

// zeta(2) = pi^2/6 and zeta(3) by accelerated series (two independent series
// cross-checked internally to 10^-digits).
Real zeta_int(int s, const PrecisionContext& ctx);

// Bessel J0, Y0, I0, K0, J1, I1, K1 at t >= 0 (t > 0 where the function is
// singular at the origin). Power series below a precision-dependent
// crossover, exponentially scaled asymptotic expansions above it.
Real bessel(BesselKind kind, const Real& t, const PrecisionContext& ctx);

// Exponentially scaled modified Bessel values: e^so(-t) I(t) and e^(+t) K(t).
// These stay polynomially bounded, so products I^a K^b can be assembled with
// a single exponential e^((a-b)t).
Real bessel_i0_scaled(const Real& t, const PrecisionContext& ctx);
Real bessel_i1_scaled(const Real& t, const PrecisionContext& ctx);
Real bessel_k0_scaled(const Real& t, const PrecisionContext& ctx);
Real bessel_k1_scaled(const Real& t, const PrecisionContext& ctx);

// H^(1)_0(x) = J0(x) + i Y0(x), x > 0.
Complex hankel1_0(const Real& x, const PrecisionContext& ctx);

// Series/asymptotic crossover used by bessel(); exposed for the regime
// consistency tests.
double bessel_crossover(const PrecisionContext& ctx);

// Evaluate deliberately in one regime (for overlap tests). `asymptotic`
// selects the scaled asymptotic expansion, otherwise the power series.
Real bessel_regime(BesselKind kind, const Real& t, const PrecisionContext& ctx, bool asymptotic);

// Generalized hypergeometric pFq by direct series summation; supports the
// 2F1 and 3F2 shapes used here. Parameters are rationals num/den.
struct Rational {
    long num;
    long den;
};
Real hyp_pfq(const std::vector<Rational>& upper, const std::vector<Rational>& lower,
             const Real& x, const PrecisionContext& ctx);

// Domb numbers D_n = sum_k C(n,k)^2 C(2(n-k), n-k) C(2k, k), exact.
std::vector<mpz_class> domb_numbers(int nmax);

}  // namespace bmlab::specfun
