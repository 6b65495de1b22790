#include "bmlab/specfun.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

namespace bmlab::specfun {

namespace {

// Decimal digits lost to cancellation when summing the log-type series at
// argument t: the I0/J0 part peaks near e^t (resp. e^t) while K0/Y0 are
// exponentially small or O(t^-1/2).
int cancellation_digits(BesselKind kind, double t) {
    switch (kind) {
        case BesselKind::K0:
        case BesselKind::K1:
            return static_cast<int>(2.0 * t * 0.4342944819 + 4);
        case BesselKind::J0:
        case BesselKind::J1:
        case BesselKind::Y0:
            return static_cast<int>(t * 0.4342944819 + 4);
        default:
            return 0;  // I-family series has positive terms only
    }
}

long series_prec(BesselKind kind, double t, const PrecisionContext& ctx) {
    return ctx.bumped(cancellation_digits(kind, t)).work_bits();
}

// J0 (sign=-1) or I0 (sign=+1) power series.
Real series_j0i0(const Real& t, long prec, int sign) {
    Real x2 = t * t;
    x2 /= 4;  // (t/2)^2
    Real term(1, prec), sum(1, prec);
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    for (long k = 1; k < 100000; ++k) {
        term *= x2;
        term /= k * k;
        if (sign < 0 && (k & 1)) sum -= term;
        else sum += term;
        if (term < tol * (1 + abs(sum))) break;
    }
    return sum;
}

// J1 (sign=-1) or I1 (sign=+1): (t/2) sum (+-1)^k (t/2)^(2k) / (k! (k+1)!).
Real series_j1i1(const Real& t, long prec, int sign) {
    Real x2 = t * t;
    x2 /= 4;
    Real term(1, prec), sum(1, prec);
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    for (long k = 1; k < 100000; ++k) {
        term *= x2;
        term /= k * (k + 1);
        if (sign < 0 && (k & 1)) sum -= term;
        else sum += term;
        if (term < tol * (1 + abs(sum))) break;
    }
    return sum * t / 2;
}

// Companion log series: sum_{k>=1} (-+1)^(k+1) H_k (t/2)^(2k) / (k!)^2.
Real series_h0(const Real& t, long prec, int sign_alternating) {
    Real x2 = t * t;
    x2 /= 4;
    Real term(1, prec), sum(prec), hk(prec);
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    for (long k = 1; k < 100000; ++k) {
        term *= x2;
        term /= k * k;
        hk += Real::from_ratio(1, k, prec);
        Real contrib = term * hk;
        if (sign_alternating && (k % 2 == 0)) sum -= contrib;
        else sum += contrib;
        if (contrib < tol * (1 + abs(sum))) break;
    }
    return sum;
}

// sum_{k>=0} (H_k + H_{k+1}) (t/2)^(2k) / (k! (k+1)!)  (for K1).
Real series_h1(const Real& t, long prec) {
    Real x2 = t * t;
    x2 /= 4;
    Real term(1, prec), sum(prec), hk(prec), hk1(1, prec);
    sum = hk1;  // k=0 term: H_0 + H_1 = 1
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    for (long k = 1; k < 100000; ++k) {
        term *= x2;
        term /= k * (k + 1);
        hk += Real::from_ratio(1, k, prec);
        hk1 += Real::from_ratio(1, k + 1, prec);
        Real contrib = term * (hk + hk1);
        sum += contrib;
        if (contrib < tol * (1 + abs(sum))) break;
    }
    return sum;
}

// Asymptotic coefficient recurrence a_k(nu) = a_(k-1) (4 nu^2 - (2k-1)^2)/(8k).
// Sums S(sgn) = sum_k sgn^k a_k / t^k until the terms stop improving.
Real asym_sum(const Real& t, long prec, int nu, int sign, bool* ok = nullptr) {
    Real ak(1, prec), sum(1, prec), tk(1, prec);
    Real best(1, prec);
    Real tol = mul_2si(Real(1, prec), -prec - 4);
    bool converged = false;
    for (long k = 1; k < 4000; ++k) {
        long num = 4 * nu * nu - (2 * k - 1) * (2 * k - 1);
        ak *= num;
        ak /= 8 * k;
        tk /= t;
        Real term = ak * tk;
        Real mag = abs(term);
        if (mag > best) break;  // divergent part of the asymptotic series
        best = mag;
        if (sign < 0 && (k & 1)) sum -= term;
        else sum += term;
        if (mag < tol) {
            converged = true;
            break;
        }
    }
    if (ok) *ok = converged;
    return sum;
}

// Oscillatory P/Q split of sum_k i^k a_k(nu)/t^k:
//   P = 1 - a2/t^2 + a4/t^4 - ...,  Q = a1/t - a3/t^3 + ...
void asym_pq(const Real& t, long prec, int nu, Real& P, Real& Q) {
    Real ak(1, prec), tk(1, prec);
    P = Real(1, prec);
    Q = Real(prec);
    Real best(1, prec);
    Real tol = mul_2si(Real(1, prec), -prec - 4);
    for (long k = 1; k < 4000; ++k) {
        long num = 4 * nu * nu - (2 * k - 1) * (2 * k - 1);
        ak *= num;
        ak /= 8 * k;
        tk /= t;
        Real term = ak * tk;
        Real mag = abs(term);
        if (mag > best) break;
        best = mag;
        switch (k & 3) {
            case 0: P += term; break;
            case 1: Q += term; break;
            case 2: P -= term; break;
            case 3: Q -= term; break;
        }
        if (mag < tol) break;
    }
}

Real kind_series(BesselKind kind, const Real& t, long prec) {
    switch (kind) {
        case BesselKind::J0: return series_j0i0(t, prec, -1);
        case BesselKind::I0: return series_j0i0(t, prec, +1);
        case BesselKind::J1: return series_j1i1(t, prec, -1);
        case BesselKind::I1: return series_j1i1(t, prec, +1);
        case BesselKind::Y0: {
            Real j0 = series_j0i0(t, prec, -1);
            Real lg = log(t / 2) + const_euler(prec);
            Real s = series_h0(t, prec, /*alternating=*/1);
            Real pi = const_pi(prec);
            return (lg * j0 + s) * 2 / pi;
        }
        case BesselKind::K0: {
            Real i0 = series_j0i0(t, prec, +1);
            Real lg = log(t / 2) + const_euler(prec);
            return series_h0(t, prec, /*alternating=*/0) - lg * i0;
        }
        case BesselKind::K1: {
            Real i1 = series_j1i1(t, prec, +1);
            Real lg = log(t / 2) + const_euler(prec);
            return 1 / t + lg * i1 - t / 4 * series_h1(t, prec);
        }
    }
    throw std::logic_error("unreachable");
}

Real kind_asymptotic(BesselKind kind, const Real& t, long prec) {
    Real pi = const_pi(prec);
    switch (kind) {
        case BesselKind::I0: return exp(t) / sqrt(2 * pi * t) * asym_sum(t, prec, 0, -1);
        case BesselKind::I1: return exp(t) / sqrt(2 * pi * t) * asym_sum(t, prec, 1, -1);
        case BesselKind::K0: return sqrt(pi / (2 * t)) * exp(-t) * asym_sum(t, prec, 0, +1);
        case BesselKind::K1: return sqrt(pi / (2 * t)) * exp(-t) * asym_sum(t, prec, 1, +1);
        case BesselKind::J0:
        case BesselKind::Y0: {
            Real P(prec), Q(prec);
            asym_pq(t, prec, 0, P, Q);
            Real w = t - const_pi(prec) / 4;
            Real amp = sqrt(2 / (pi * t));
            return kind == BesselKind::J0 ? amp * (P * cos(w) - Q * sin(w))
                                          : amp * (P * sin(w) + Q * cos(w));
        }
        case BesselKind::J1: {
            Real P(prec), Q(prec);
            asym_pq(t, prec, 1, P, Q);
            Real w = t - 3 * const_pi(prec) / 4;
            return sqrt(2 / (pi * t)) * (P * cos(w) - Q * sin(w));
        }
    }
    throw std::logic_error("unreachable");
}

Real round_to_ctx(const Real& x, const PrecisionContext& ctx) {
    Real r(ctx.work_bits());
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

double bessel_crossover(const PrecisionContext& ctx) {
    double d = ctx.work_digits() * 2.302585092994046 / 2.0;
    return d > 30.0 ? d : 30.0;
}

Real bessel_regime(BesselKind kind, const Real& t, const PrecisionContext& ctx, bool asymptotic) {
    double td = t.to_double();
    if (asymptotic) return round_to_ctx(kind_asymptotic(kind, t, ctx.work_bits() + 16), ctx);
    long prec = series_prec(kind, td, ctx);
    Real th(prec);
    mpfr_set(th.raw(), t.raw(), MPFR_RNDN);
    return round_to_ctx(kind_series(kind, th, prec), ctx);
}

Real bessel(BesselKind kind, const Real& t, const PrecisionContext& ctx) {
    if (t < 0) throw std::domain_error("bessel: t must be nonnegative");
    bool zero_ok = kind == BesselKind::J0 || kind == BesselKind::I0 ||
                   kind == BesselKind::J1 || kind == BesselKind::I1;
    if (t.is_zero()) {
        if (!zero_ok) throw std::domain_error("bessel: function singular at t = 0");
        long prec = ctx.work_bits();
        return (kind == BesselKind::J0 || kind == BesselKind::I0) ? Real(1, prec) : Real(prec);
    }
    double td = t.to_double();
    return bessel_regime(kind, t, ctx, td >= bessel_crossover(ctx));
}

Real bessel_i0_scaled(const Real& t, const PrecisionContext& ctx) {
    double td = t.to_double();
    if (td >= bessel_crossover(ctx)) {
        long prec = ctx.work_bits() + 16;
        Real pi = const_pi(prec);
        return round_to_ctx(asym_sum(t, prec, 0, -1) / sqrt(2 * pi * t), ctx);
    }
    long prec = ctx.work_bits() + 16;
    Real th(prec);
    mpfr_set(th.raw(), t.raw(), MPFR_RNDN);
    return round_to_ctx(exp(-th) * series_j0i0(th, prec, +1), ctx);
}

Real bessel_i1_scaled(const Real& t, const PrecisionContext& ctx) {
    double td = t.to_double();
    if (td >= bessel_crossover(ctx)) {
        long prec = ctx.work_bits() + 16;
        Real pi = const_pi(prec);
        return round_to_ctx(asym_sum(t, prec, 1, -1) / sqrt(2 * pi * t), ctx);
    }
    long prec = ctx.work_bits() + 16;
    Real th(prec);
    mpfr_set(th.raw(), t.raw(), MPFR_RNDN);
    return round_to_ctx(exp(-th) * series_j1i1(th, prec, +1), ctx);
}

Real bessel_k0_scaled(const Real& t, const PrecisionContext& ctx) {
    double td = t.to_double();
    if (td >= bessel_crossover(ctx)) {
        long prec = ctx.work_bits() + 16;
        Real pi = const_pi(prec);
        return round_to_ctx(sqrt(pi / (2 * t)) * asym_sum(t, prec, 0, +1), ctx);
    }
    long prec = series_prec(BesselKind::K0, td, ctx);
    Real th(prec);
    mpfr_set(th.raw(), t.raw(), MPFR_RNDN);
    return round_to_ctx(exp(th) * kind_series(BesselKind::K0, th, prec), ctx);
}

Real bessel_k1_scaled(const Real& t, const PrecisionContext& ctx) {
    double td = t.to_double();
    if (td >= bessel_crossover(ctx)) {
        long prec = ctx.work_bits() + 16;
        Real pi = const_pi(prec);
        return round_to_ctx(sqrt(pi / (2 * t)) * asym_sum(t, prec, 1, +1), ctx);
    }
    long prec = series_prec(BesselKind::K1, td, ctx);
    Real th(prec);
    mpfr_set(th.raw(), t.raw(), MPFR_RNDN);
    return round_to_ctx(exp(th) * kind_series(BesselKind::K1, th, prec), ctx);
}

Complex hankel1_0(const Real& x, const PrecisionContext& ctx) {
    if (!(x > 0)) throw std::domain_error("hankel1_0: x must be positive");
    return Complex(bessel(BesselKind::J0, x, ctx), bessel(BesselKind::Y0, x, ctx));
}

Real gamma(const Real& x, const PrecisionContext& ctx) {
    if (!(x > 0)) throw std::domain_error("gamma: x must be positive");
    long prec = ctx.work_bits();
    Real xh(prec);
    mpfr_set(xh.raw(), x.raw(), MPFR_RNDN);
    return tgamma(xh);
}

namespace {

// Apery-type series zeta(3) = (5/2) sum (-1)^(n-1) / (n^3 C(2n,n)).
Real zeta3_apery(long prec) {
    mpz_class binom(2);  // C(2n,n) at n = 1
    Real sum(prec);
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    for (long n = 1; n < 100000; ++n) {
        Real term(prec);
        mpz_class d = binom * n * n * n;
        mpfr_set_z(term.raw(), d.get_mpz_t(), MPFR_RNDN);
        term = 1 / term;
        if (n & 1) sum += term;
        else sum -= term;
        if (term < tol) break;
        // C(2(n+1), n+1) = C(2n,n) * 2(2n+1)/(n+1)
        binom *= 2 * (2 * n + 1);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), n + 1);
    }
    return sum * 5 / 2;
}

// Euler-Maclaurin for zeta(3); independent of the Apery route.
Real zeta3_euler_maclaurin(long prec) {
    const long N = 48;
    Real sum(prec);
    for (long n = 1; n < N; ++n) sum += Real::from_ratio(1, n * n * n, prec);
    Real Nr(N, prec);
    sum += 1 / (2 * Nr * Nr) + 1 / (2 * Nr * Nr * Nr);
    // Bernoulli correction: sum_k B_2k (2k+1)/2 N^(-2k-2), exact rationals.
    std::vector<mpq_class> B{1};  // B_0
    long kmax = static_cast<long>(prec / 18) + 8;
    for (long m = 1; m <= 2 * kmax; ++m) {
        mpq_class s(0);
        mpz_class c(1);  // C(m+1, j)
        for (long j = 0; j < m; ++j) {
            s += B[j] * c;
            c *= (m + 1 - j);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), j + 1);
        }
        B.push_back(-s / (m + 1));
    }
    Real N2 = Nr * Nr;
    Real Npow = N2;  // N^(2k) running
    for (long k = 1; k <= kmax; ++k) {
        Npow *= N2;
        mpq_class coef = B[2 * k] * (2 * k + 1) / 2;
        Real c(prec);
        mpfr_set_q(c.raw(), coef.get_mpq_t(), MPFR_RNDN);
        sum += c / Npow;
    }
    return sum;
}

}  // namespace

Real zeta_int(int s, const PrecisionContext& ctx) {
    long prec = ctx.work_bits();
    if (s == 2) {
        Real pi = const_pi(prec);
        return pi * pi / 6;
    }
    if (s == 3) {
        Real a = zeta3_apery(prec);
        Real b = zeta3_euler_maclaurin(prec);
        if (abs(a - b) > pow10(-ctx.digits, prec) * abs(a))
            throw std::runtime_error("zeta_int: accelerated series disagree");
        return a;
    }
    throw std::invalid_argument("zeta_int: only s in {2,3} supported");
}

Real hyp_pfq(const std::vector<Rational>& upper, const std::vector<Rational>& lower,
             const Real& x, const PrecisionContext& ctx) {
    if (abs(x) > 1) throw std::domain_error("hyp_pfq: |x| > 1 diverges");
    // Near-unit arguments get a flat precision bump instead of a connection
    // formula; all in-scope evaluations stay inside [0, 1).
    long prec = ctx.work_bits();
    double xd = abs(x).to_double();
    if (xd > 0.9) prec += static_cast<long>(2 * ctx.series_guard * 3.33) + 16;
    Real xs(prec);
    mpfr_set(xs.raw(), x.raw(), MPFR_RNDN);
    Real term(1, prec), sum(1, prec);
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    for (long n = 0; n < 2000000; ++n) {
        for (const auto& a : upper) term *= (Real(a.num, prec) + Real(a.den, prec) * n) / a.den;
        for (const auto& b : lower) term *= Real((long)b.den, prec) / (Real(b.num, prec) + Real(b.den, prec) * n);
        term *= xs;
        term /= n + 1;
        sum += term;
        if (abs(term) < tol * (1 + abs(sum))) break;
    }
    Real r(ctx.work_bits());
    mpfr_set(r.raw(), sum.raw(), MPFR_RNDN);
    return r;
}

std::vector<mpz_class> domb_numbers(int nmax) {
    auto binom = [](long n, long k) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), n, k);
        return r;
    };
    std::vector<mpz_class> d;
    for (int n = 0; n <= nmax; ++n) {
        mpz_class s(0);
        for (int k = 0; k <= n; ++k) {
            mpz_class c = binom(n, k);
            s += c * c * binom(2 * (n - k), n - k) * binom(2 * k, k);
        }
        d.push_back(s);
    }
    return d;
}

}  // namespace bmlab::specfun
