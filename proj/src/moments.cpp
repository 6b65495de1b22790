#include "bmlab/moments.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <map>
#include <vector>

#include "bmlab/quadrature.hpp"
#include "bmlab/specfun.hpp"

namespace bmlab::moments {

using specfun::BesselKind;

bool MomentSpec::convergent() const {
    if (e1 < 0 || e2 < 0 || power < 0) return false;
    if (family == Family::IKM) return e2 > e1 || (e1 == e2 && e1 >= power + 2);
    // Absolute convergence (envelope decays faster than t^-1), or the
    // oscillatory criterion for odd products, whose asymptotics carry no
    // zero-frequency component. Even products have a nonvanishing mean, so
    // the oscillatory-mean clause alone would admit divergent specs.
    int p = e1 + e2;
    if (p > 2 * (power + 1)) return true;
    return (p % 2 == 1) && p > 2 * power + 1;
}

Integrand Integrand::product(std::initializer_list<std::pair<Factor, int>> factors, int tp) {
    Integrand f;
    for (auto& [k, e] : factors) f.exponents[static_cast<int>(k)] += e;
    f.tpow = tp;
    return f;
}

int Integrand::factor_envelope() const {
    return exponent(Factor::I0) + exponent(Factor::I1) - exponent(Factor::K0) - exponent(Factor::K1);
}

int Integrand::oscillatory_count() const {
    return exponent(Factor::J0) + exponent(Factor::Y0) + exponent(Factor::J1);
}

bool Integrand::pure_ik() const { return oscillatory_count() == 0 && !has_kernel; }

namespace {

Real envelope_rate(const Integrand& f, long prec) {
    Real r(static_cast<long>(f.factor_envelope()), prec);
    if (f.has_kernel) {
        if (f.kernel == TransformKernel::I) r += f.kernel_scale;
        if (f.kernel == TransformKernel::K) r -= f.kernel_scale;
    }
    return r;
}

// f(t) assembled from exponentially scaled I/K values with one e^(rate*t).
Real integrand_value(const Integrand& f, const Real& t, const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    Real v(1, prec);
    long sigma = 0;
    auto mulpow = [&](const Real& base, int e) {
        if (e == 1) v *= base;
        else v *= pow(base, e);
    };
    int e;
    if ((e = f.exponent(Factor::J0))) mulpow(specfun::bessel(BesselKind::J0, t, ctx), e);
    if ((e = f.exponent(Factor::Y0))) mulpow(specfun::bessel(BesselKind::Y0, t, ctx), e);
    if ((e = f.exponent(Factor::J1))) mulpow(specfun::bessel(BesselKind::J1, t, ctx), e);
    if ((e = f.exponent(Factor::I0))) { mulpow(specfun::bessel_i0_scaled(t, ctx), e); sigma += e; }
    if ((e = f.exponent(Factor::I1))) { mulpow(specfun::bessel_i1_scaled(t, ctx), e); sigma += e; }
    if ((e = f.exponent(Factor::K0))) { mulpow(specfun::bessel_k0_scaled(t, ctx), e); sigma -= e; }
    if ((e = f.exponent(Factor::K1))) { mulpow(specfun::bessel_k1_scaled(t, ctx), e); sigma -= e; }
    Real arg = t * sigma;
    if (f.has_kernel) {
        Real u = f.kernel_scale * t;
        switch (f.kernel) {
            case TransformKernel::J: v *= specfun::bessel(BesselKind::J0, u, ctx); break;
            case TransformKernel::Y: v *= specfun::bessel(BesselKind::Y0, u, ctx); break;
            case TransformKernel::K: v *= specfun::bessel_k0_scaled(u, ctx); arg -= u; break;
            case TransformKernel::I: v *= specfun::bessel_i0_scaled(u, ctx); arg += u; break;
        }
    }
    if (!arg.is_zero()) v *= exp(arg);
    if (f.tpow) v *= pow(t, f.tpow);
    return v;
}

// Coefficients of the scaled asymptotic series for one factor kind:
// e^(-t) I_nu(t) sqrt(2 pi t) = sum (-1)^k a_k(nu) / t^k,
// e^(+t) K_nu(t) sqrt(2 t / pi) = sum a_k(nu) / t^k.
std::vector<mpq_class> asym_coeffs(int nu, bool is_i, int order) {
    std::vector<mpq_class> c(order + 1);
    c[0] = 1;
    for (int k = 1; k <= order; ++k) {
        mpq_class num(4 * nu * nu - (2 * k - 1) * (2 * k - 1), 8 * k);
        num.canonicalize();
        c[k] = c[k - 1] * num;
        // the I series carries (-1)^k a_k(nu); one flip per recurrence step
        if (is_i) c[k] = -c[k];
    }
    return c;
}

std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                int order) {
    std::vector<mpq_class> r(order + 1);
    for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

struct TailSeries {
    std::vector<mpq_class> d;  // sum d_k / t^k
    Real prefactor;            // pi^((K-I)/2) 2^(-(I+K)/2)
    Real mu;                   // t^mu overall power (tpow - (I+K)/2)
    long sigma = 0;            // exponential rate (<= 0)
};

TailSeries tail_series(const Integrand& f, const PrecisionContext& ctx, int order) {
    long prec = ctx.work_bits() + 16;
    TailSeries ts;
    ts.d = {mpq_class(1)};
    int icount = 0, kcount = 0;
    auto mul_in = [&](int nu, bool is_i, int e) {
        auto base = asym_coeffs(nu, is_i, order);
        for (int r = 0; r < e; ++r) ts.d = poly_mul(ts.d, base, order);
    };
    if (int e = f.exponent(Factor::I0)) { mul_in(0, true, e); icount += e; }
    if (int e = f.exponent(Factor::I1)) { mul_in(1, true, e); icount += e; }
    if (int e = f.exponent(Factor::K0)) { mul_in(0, false, e); kcount += e; }
    if (int e = f.exponent(Factor::K1)) { mul_in(1, false, e); kcount += e; }
    ts.sigma = icount - kcount;
    Real pi = const_pi(prec);
    ts.prefactor = pow(pi, Real(kcount - icount, prec) / 2) * pow(Real(2, prec), Real(-(icount + kcount), prec) / 2);
    ts.mu = Real(2 * f.tpow - (icount + kcount), prec) / 2;
    return ts;
}

// int_T^inf of the truncated asymptotic series, with the first omitted term
// as the truncation-error estimate.
void tail_integral(const TailSeries& ts, const Real& T, Real& value, Real& err) {
    long prec = ts.prefactor.prec();
    value = Real(prec);
    Real absrate(-ts.sigma, prec);
    Real last(prec);
    for (size_t k = 0; k < ts.d.size(); ++k) {
        Real dk(prec);
        mpfr_set_q(dk.raw(), ts.d[k].get_mpq_t(), MPFR_RNDN);
        Real ex = ts.mu - static_cast<long>(k);
        Real piece(prec);
        if (ts.sigma == 0) {
            // int_T^inf t^(mu-k) dt = T^(mu-k+1)/(k-1-mu)
            piece = pow(T, ex + 1) / (-(ex + 1));
        } else {
            piece = gamma_upper(ex + 1, absrate * T) / pow(absrate, ex + 1);
        }
        last = dk * piece;
        value += last;
    }
    value *= ts.prefactor;
    err = abs(ts.prefactor * last) * 2;
}

struct Piece {
    Real value;
    Real err;
    long segments = 0;
};

// Quadrature on [from, T]: tanh-sinh on [from, 1] when from = 0 (log
// endpoint), then Gauss-Legendre panels whose width tracks both the log
// spacing and the oscillation frequency.
Piece finite_part(const quad::Fn& fn, const Real& from, const Real& T, double freq,
                  const PrecisionContext& ctx, int order) {
    long prec = ctx.work_bits() + 16;
    Real target = mul_2si(Real(1, prec), -ctx.work_bits() - 6);
    Piece p{Real(prec), Real(prec), 0};
    Real one(1, prec);
    Real t = from;
    if (from.is_zero()) {
        Real head_end = min(one, T);
        auto head = quad::tanh_sinh(fn, from, head_end, prec, target);
        p.value = head.value;
        p.err = head.abs_error;
        p.segments = 1;
        t = head_end;
    }
    double wcap = freq > 0.05 ? 6 * 3.14159265358979 / freq : 1e9;
    while (t < T) {
        double td = t.to_double();
        double w = std::min({std::max(td, 0.5), wcap, T.to_double() - td + 1e-12});
        Real width(prec);
        mpfr_set_d(width.raw(), w, MPFR_RNDN);
        Real tn = min(t + width, T);
        auto e = quad::gl_adaptive(fn, t, tn, prec, target, order, 10);
        p.value += e.value;
        p.err += e.abs_error;
        p.segments += 1;
        t = tn;
    }
    return p;
}

double solve_T_exponential(const Integrand& f, const PrecisionContext& ctx, double sigma_abs) {
    double D = (ctx.work_digits() + 8) * 2.302585093;
    double T = D / sigma_abs;
    double mu = f.tpow;  // pessimistic power growth
    for (int i = 0; i < 3; ++i) T = (D + std::max(mu, 0.0) * std::log(T + 2)) / sigma_abs;
    return std::max(T, 40.0);
}

QuadratureReport integrate_exponential(const Integrand& f, const PrecisionContext& ctx,
                                       const EngineOptions& opt) {
    long prec = ctx.work_bits() + 16;
    Real rate = envelope_rate(f, prec);
    double sigma_abs = -rate.to_double();
    double Td = opt.split_T ? *opt.split_T : solve_T_exponential(f, ctx, sigma_abs);
    Real T(prec);
    mpfr_set_d(T.raw(), Td, MPFR_RNDN);
    double freq = 0;
    if (f.has_kernel && (f.kernel == TransformKernel::J || f.kernel == TransformKernel::Y))
        freq += f.kernel_scale.to_double();
    freq += f.oscillatory_count();
    quad::Fn fn = [&](const Real& t) { return integrand_value(f, t, ctx); };
    Piece body = finite_part(fn, Real(prec), T, freq, ctx, opt.panel_order);
    Real tail_v(prec), tail_e(prec);
    if (f.pure_ik()) {
        TailSeries ts = tail_series(f, ctx, opt.tail_order ? *opt.tail_order : ctx.tail_order);
        tail_integral(ts, T, tail_v, tail_e);
    } else {
        // bound-only tail: |f(T)| decays at least like e^(rate (t-T))
        Real fT = abs(fn(T));
        tail_e = fT / abs(rate) * 2;
    }
    return QuadratureReport{body.value + tail_v, body.err + tail_e, body.segments, false};
}

QuadratureReport integrate_algebraic(const Integrand& f, const PrecisionContext& ctx,
                                     const EngineOptions& opt) {
    // pure I/K with envelope 0: integrand ~ C t^(mu), mu = tpow - (a+b)/2
    long prec = ctx.work_bits() + 16;
    int order = opt.tail_order ? *opt.tail_order : ctx.tail_order;
    TailSeries ts = tail_series(f, ctx, order);
    double mu = ts.mu.to_double();
    if (mu + 1 >= 0) throw std::domain_error("integrate: divergent algebraic tail");
    double dK = 1;
    for (int k = 1; k <= order; ++k) dK *= std::fabs(4.0 * k * k / (8.0 * k));  // crude growth cap
    double eps = std::pow(10.0, -(ctx.work_digits() + 6));
    double expo = order - 1 - mu;
    double Td = std::pow(std::max(dK, 1.0) / eps, 1.0 / expo);
    if (opt.split_T) Td = *opt.split_T;
    Td = std::max(Td, 64.0);
    Real T(prec);
    mpfr_set_d(T.raw(), Td, MPFR_RNDN);
    quad::Fn fn = [&](const Real& t) { return integrand_value(f, t, ctx); };
    Piece body = finite_part(fn, Real(prec), T, 0, ctx, opt.panel_order);
    Real tail_v(prec), tail_e(prec);
    tail_integral(ts, T, tail_v, tail_e);
    return QuadratureReport{body.value + tail_v, body.err + tail_e, body.segments, false};
}

// ---- Oscillatory engine ----------------------------------------------------
//
// Beyond T the integrand is expanded through the Hankel asymptotics into
// frequency components: J0(t) = sqrt(2/(pi t)) Re[C(1/t) e^(it)] with
// C = e^(-i pi/4) sum_k i^k a_k(0)/t^k (and the matching series for Y0, J1
// and the kernel). The product becomes
//   t^mu sum_omega e^(i omega t) S_omega(1/t),
// whose zero-frequency part integrates by the power rule and whose
// oscillatory parts integrate by parts, term by term.

struct OscComponent {
    int base;  // integer frequency from the unit-argument factors
    int xmul;  // -1, 0, +1 multiple of the kernel frequency x
    std::vector<Complex> poly;
};

namespace osc {

std::vector<Complex> half_factor_series(int nu, int phase_quarters, const Real& argscale,
                                        int order, long prec) {
    // C(1/t)/2 with C = e^(i phase pi/4) sum_k i^k a_k(nu) (argscale/t)^k
    std::vector<Complex> c;
    Real pi = const_pi(prec);
    Real ph = pi * phase_quarters / 4;
    Complex rot(cos(ph) / 2, sin(ph) / 2);
    mpq_class ak(1);
    Real scale_pow(1, prec);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            mpq_class num(4 * nu * nu - (2 * k - 1) * (2 * k - 1), 8 * k);
            num.canonicalize();
            ak *= num;
            scale_pow *= argscale;
        }
        Real akr(prec);
        mpfr_set_q(akr.raw(), ak.get_mpq_t(), MPFR_RNDN);
        Complex ik(prec);
        switch (k & 3) {
            case 0: ik.re = Real(1, prec); break;
            case 1: ik.im = Real(1, prec); break;
            case 2: ik.re = Real(-1, prec); break;
            case 3: ik.im = Real(-1, prec); break;
        }
        c.push_back(ik * rot * (akr * scale_pow));
    }
    return c;
}

std::vector<Complex> conj_poly(const std::vector<Complex>& p) {
    std::vector<Complex> r;
    r.reserve(p.size());
    for (const auto& c : p) r.push_back(c.conj());
    return r;
}

std::vector<Complex> cpoly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b,
                               int order, long prec) {
    std::vector<Complex> r(order + 1, Complex(prec));
    for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// int_T^inf e^(i omega t) t^s dt by parts; the remainder joins the error.
Complex osc_power_tail(const Real& omega, const Real& s, const Real& T, long prec, Real& err) {
    Complex iw(Real(prec), omega);
    Complex phase = exp(Complex(Real(prec), omega * T));
    Complex total(prec);
    Real coef(1, prec);
    Real tpow = pow(T, s);
    Real sj = s;
    Complex iwp = iw;
    Real tol = mul_2si(Real(1, prec), -prec - 4);
    Real prev_mag(prec);
    for (int j2 = 0; j2 < 200; ++j2) {
        Complex term = phase * (coef * tpow) / iwp;
        Real mag = abs(term);
        if (j2 > 0 && mag > prev_mag) {  // asymptotic turn
            err += mag;
            return total;
        }
        total -= term;
        prev_mag = mag;
        if (mag < tol) return total;
        coef *= -sj;  // (-1)^j (s)(s-1)...(s-j+1)
        sj -= 1;
        tpow = tpow / T;
        iwp *= iw;
    }
    err += prev_mag;
    return total;
}

}  // namespace osc

QuadratureReport integrate_oscillatory(const Integrand& f, const PrecisionContext& ctx,
                                       const EngineOptions& opt) {
    long prec = ctx.work_bits() + 16;
    int p = f.oscillatory_count() + (f.has_kernel ? 1 : 0);
    int icount = f.exponent(Factor::I0) + f.exponent(Factor::I1);
    int kcount = f.exponent(Factor::K0) + f.exponent(Factor::K1);
    // effective power after the algebraic I*K decay; oscillatory criterion
    // on the remainder
    if (!(p > 2 * f.tpow - (icount + kcount) + 1))
        throw std::domain_error("integrate: oscillatory spec diverges");
    Real pi = const_pi(prec);
    Real x = f.has_kernel ? f.kernel_scale : Real(1, prec);
    double xd = f.has_kernel ? x.to_double() : 0.0;
    Real mu = Real(2 * f.tpow - p - icount - kcount, prec) / 2;

    // frequency components of the product asymptotics
    int max_order = 72;
    std::map<std::pair<int, int>, std::vector<Complex>> comps;
    comps[{0, 0}] = {Complex(1, prec)};
    auto mul_factor = [&](int nu, int phase_quarters, const Real& argscale, int xm) {
        auto cpos = osc::half_factor_series(nu, phase_quarters, argscale, max_order, prec);
        auto cneg = osc::conj_poly(cpos);
        std::map<std::pair<int, int>, std::vector<Complex>> next;
        for (const auto& [key, poly] : comps) {
            auto add = [&](std::pair<int, int> nk, const std::vector<Complex>& fac) {
                auto prod = osc::cpoly_mul(poly, fac, max_order, prec);
                auto it = next.find(nk);
                if (it == next.end()) next.emplace(nk, std::move(prod));
                else
                    for (size_t i = 0; i < it->second.size(); ++i) it->second[i] += prod[i];
            };
            if (xm == 0) {
                add({key.first + 1, key.second}, cpos);
                add({key.first - 1, key.second}, cneg);
            } else {
                add({key.first, key.second + 1}, cpos);
                add({key.first, key.second - 1}, cneg);
            }
        }
        comps = std::move(next);
    };
    for (int r = 0; r < f.exponent(Factor::J0); ++r) mul_factor(0, -1, Real(1, prec), 0);
    for (int r = 0; r < f.exponent(Factor::Y0); ++r) mul_factor(0, -3, Real(1, prec), 0);
    for (int r = 0; r < f.exponent(Factor::J1); ++r) mul_factor(1, -3, Real(1, prec), 0);
    if (f.has_kernel) {
        int ph = f.kernel == TransformKernel::Y ? -3 : -1;
        mul_factor(0, ph, 1 / x, 1);
    }
    // fold the (exponent-zero) I*K product asymptotics into every component
    if (icount + kcount > 0) {
        if (icount != kcount)
            throw std::logic_error("integrate_oscillatory: nonzero exponential envelope");
        TailSeries ik = tail_series(f, ctx, max_order);
        std::vector<Complex> ikpoly;
        for (auto& dq : ik.d) {
            Real dr(prec);
            mpfr_set_q(dr.raw(), dq.get_mpq_t(), MPFR_RNDN);
            ikpoly.push_back(Complex(dr));
        }
        for (auto& [key, poly] : comps) poly = osc::cpoly_mul(poly, ikpoly, max_order, prec);
    }
    // overall amplitude (2/pi)^(p/2) x^(-1/2 if kernel) and the I/K prefactor
    Real amp = pow(2 / pi, Real(p, prec) / 2);
    if (f.has_kernel) amp /= sqrt(x);
    if (icount + kcount > 0)
        amp *= pow(pi, Real(kcount - icount, prec) / 2) * pow(Real(2, prec), Real(-(icount + kcount), prec) / 2);

    // check the zero-frequency component against divergence, and find the
    // smallest nonzero frequency to place T
    double min_omega = 1e9;
    bool has_dc = false;
    for (const auto& [key, poly] : comps) {
        double om = key.first + key.second * xd;
        Real maxc(prec);
        for (const auto& c : poly) maxc = max(maxc, abs(c));
        if (maxc < mul_2si(Real(1, prec), -prec + 24)) continue;
        if (std::fabs(om) < 1e-12) has_dc = true;
        else min_omega = std::min(min_omega, std::fabs(om));
    }
    if (has_dc && mu.to_double() >= -1.0)
        throw std::domain_error("integrate: nonvanishing mean component diverges");

    double D = (ctx.work_digits() + 8) * 2.302585093;
    double T0d = std::max({40.0, D / std::max(min_omega, 0.05), p * D / 2.0});
    if (opt.split_T) T0d = *opt.split_T;
    T0d = std::min(T0d, 20000.0);
    Real T0(prec);
    mpfr_set_d(T0.raw(), T0d, MPFR_RNDN);

    quad::Fn fn = [&](const Real& t) { return integrand_value(f, t, ctx); };
    Real target = mul_2si(Real(1, prec), -ctx.work_bits() - 6);

    // [0,1] with t = e^(-s) to linearize the Y0 log singularity at 0
    Real S = Real(4 * (ctx.work_digits() + 10), prec) * const_log2(prec);
    quad::Fn sub = [&](const Real& s) {
        Real t = exp(-s);
        return integrand_value(f, t, ctx) * t;
    };
    Piece head{Real(prec), Real(prec), 0};
    {
        Real s0(prec);
        while (s0 < S) {
            Real s1 = min(s0 + 4, S);
            auto e = quad::gl_adaptive(sub, s0, s1, prec, target, opt.panel_order, 8);
            head.value += e.value;
            head.err += e.abs_error;
            head.segments += 1;
            s0 = s1;
        }
    }
    double freq = f.oscillatory_count() + std::fabs(xd);
    Piece mid = finite_part(fn, Real(1, prec), T0, freq, ctx, opt.panel_order);

    // symbolic tail beyond T0
    Complex tail(prec);
    Real tail_err(prec);
    for (const auto& [key, poly] : comps) {
        Real omega = Real(key.first, prec) + x * key.second * (f.has_kernel ? 1 : 0);
        bool dc = std::fabs(key.first + key.second * xd) < 1e-12;
        Real prevmag(prec);
        for (size_t k = 0; k < poly.size(); ++k) {
            Real s = mu - static_cast<long>(k);
            Real cmag = abs(poly[k]);
            if (cmag.is_zero()) continue;
            Real piece_mag = cmag * pow(T0, s);
            if (k > 4 && piece_mag > prevmag) {  // asymptotic turn of the 1/t series
                tail_err += piece_mag * pow(T0, Real(1, prec));
                break;
            }
            prevmag = piece_mag;
            if (piece_mag * T0 < target) break;
            if (dc) {
                tail += poly[k] * (pow(T0, s + 1) / (-(s + 1)));
            } else {
                Real err_here(prec);
                tail += poly[k] * osc::osc_power_tail(omega, s, T0, prec, err_here);
                tail_err += err_here;
            }
        }
    }
    tail *= amp;
    tail_err *= amp;
    Real imag_leak = abs(tail.im);
    Real value = head.value + mid.value + tail.re;
    return QuadratureReport{value, head.err + mid.err + tail_err + imag_leak,
                            head.segments + mid.segments + static_cast<long>(comps.size()), true};
}

}  // namespace

QuadratureReport integrate(const Integrand& f, const PrecisionContext& ctx, const EngineOptions& opt) {
    long prec = ctx.work_bits() + 16;
    Real rate = envelope_rate(f, prec);
    if (rate > 0) throw std::domain_error("integrate: envelope exponent is positive (divergent)");
    if (rate < 0) return integrate_exponential(f, ctx, opt);
    if (f.pure_ik()) return integrate_algebraic(f, ctx, opt);
    return integrate_oscillatory(f, ctx, opt);
}

QuadratureReport ikm(int a, int b, int n, const PrecisionContext& ctx, const EngineOptions& opt) {
    MomentSpec spec{Family::IKM, a, b, n};
    if (!spec.convergent()) throw std::domain_error("ikm: divergent moment spec");
    Integrand f = Integrand::product({{Factor::I0, a}, {Factor::K0, b}}, n);
    return integrate(f, ctx, opt);
}

QuadratureReport jym(int alpha, int beta, int nu, const PrecisionContext& ctx, const EngineOptions& opt) {
    MomentSpec spec{Family::JYM, alpha, beta, nu};
    if (!spec.convergent()) throw std::domain_error("jym: divergent moment spec");
    Integrand f = Integrand::product({{Factor::J0, alpha}, {Factor::Y0, beta}}, nu);
    return integrate(f, ctx, opt);
}

namespace {

// Expansion of 2 Re/Im[(pi I0 + i K0)^m] K0^m t^p as monomials I0^j K0^(2m-j).
// Even branch keeps m - j even, odd branch keeps m - j odd; the sign is the
// real/imaginary part of i^(m-j).
Real combination_integral(int m, int p, bool odd_branch, const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    Real pi = const_pi(prec);
    Real total(prec);
    for (int j = m; j >= 0; --j) {
        int r = m - j;
        if ((r % 2 == 1) != odd_branch) continue;
        int sign = (r % 4 == 0 || r % 4 == 1) ? 1 : -1;
        Integrand f = Integrand::product({{Factor::I0, j}, {Factor::K0, 2 * m - j}}, p);
        QuadratureReport q = integrate(f, ctx);
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), m, j);
        Real coef(prec);
        mpfr_set_z(coef.raw(), binom.get_mpz_t(), MPFR_RNDN);
        total += coef * pow(pi, j) * q.value * (2 * sign);
    }
    return total;
}

}  // namespace

Real sum_rule(int m, int n, SumRuleBranch branch, const PrecisionContext& ctx) {
    bool odd = branch == SumRuleBranch::OddCombination;
    if (!odd) {
        if (!(m > 1 && n >= 0 && (m - n) > 0 && (m - n) % 2 == 0))
            throw std::domain_error("sum_rule: even-branch parity conditions violated");
    } else {
        if (!(m > 0 && n >= 0 && (m - n - 1) > 0 && (m - n - 1) % 2 == 0))
            throw std::domain_error("sum_rule: odd-branch parity conditions violated");
    }
    return combination_integral(m, n, odd, ctx);
}

Real bm_sequence(int m, int n, const PrecisionContext& ctx) {
    if (m < 1 || n < 1) throw std::domain_error("bm_sequence: m, n must be >= 1");
    long prec = ctx.work_bits() + 16;
    int p = 2 * n + m - 3;
    if (p < 0) throw std::domain_error("bm_sequence: negative t-power");
    Real pi = const_pi(prec);
    // odd combination with (2t)^p: scales the t^p monomials by 2^p
    Real integral = combination_integral(m, p, true, ctx) * pow(Real(2, prec), p);
    long e = 1 + 2 * (n - 1) * (1 - ((m % 2) ? -1 : 1));
    return mul_2si(integral, e) / pow(pi, m + 1);
}

Real transform(TransformKernel kernel, const Real& x, const Integrand& f, const PrecisionContext& ctx) {
    if (!(x > 0)) throw std::domain_error("transform: x must be positive");
    if (f.has_kernel) throw std::invalid_argument("transform: integrand already has a kernel");
    Integrand g = f;
    g.has_kernel = true;
    g.kernel = kernel;
    g.kernel_scale = x;
    g.tpow = f.tpow;
    long prec = ctx.work_bits() + 16;
    Real rate = envelope_rate(g, prec);
    if (rate > 0 || (rate.is_zero() && kernel == TransformKernel::I))
        throw std::domain_error("transform: x exceeds the decay margin of f");
    return integrate(g, ctx).value;
}

namespace {

int log_degree(const Integrand& f) {
    return f.exponent(Factor::K0) + f.exponent(Factor::Y0);
}

// Solve a small dense linear system in place (partial pivoting).
std::vector<Real> solve_dense(std::vector<std::vector<Real>> A, std::vector<Real> b) {
    size_t n = A.size();
    for (size_t i = 0; i < n; ++i) {
        size_t piv = i;
        for (size_t r = i + 1; r < n; ++r)
            if (abs(A[r][i]) > abs(A[piv][i])) piv = r;
        std::swap(A[i], A[piv]);
        std::swap(b[i], b[piv]);
        for (size_t r = i + 1; r < n; ++r) {
            Real m = A[r][i] / A[i][i];
            for (size_t c2 = i; c2 < n; ++c2) A[r][c2] -= m * A[i][c2];
            b[r] -= m * b[i];
        }
    }
    std::vector<Real> x(n, Real(b[0].prec()));
    for (size_t ii = n; ii-- > 0;) {
        Real s = b[ii];
        for (size_t c2 = ii + 1; c2 < n; ++c2) s -= A[ii][c2] * x[c2];
        x[ii] = s / A[ii][ii];
    }
    return x;
}

// Large-x model of a Hankel-type transform h(x):
// h(x) x^2 = P(log x) + Q(log x)/x^2 + R(log x)/x^4.
struct TailFit {
    std::vector<Real> P, Q, R;  // coefficients in powers of log x
};

TailFit fit_transform_tail(const std::function<Real(const Real&)>& h, int logdeg, const Real& X0,
                           long prec) {
    int npar = 3 * (logdeg + 1);
    std::vector<std::vector<Real>> A;
    std::vector<Real> rhs;
    Real x = X0;
    Real ratio = sqrt(Real(2, prec));
    for (int i = 0; i < npar; ++i) {
        Real L = log(x);
        std::vector<Real> row;
        Real inv2 = 1 / (x * x);
        for (Real scale : {Real(1, prec), inv2, inv2 * inv2}) {
            Real Lp = scale;
            for (int j2 = 0; j2 <= logdeg; ++j2) {
                row.push_back(Lp);
                Lp = Lp * L;
            }
        }
        A.push_back(std::move(row));
        rhs.push_back(h(x) * x * x);
        x = x * ratio;
    }
    auto sol = solve_dense(std::move(A), std::move(rhs));
    TailFit tf;
    tf.P.assign(sol.begin(), sol.begin() + logdeg + 1);
    tf.Q.assign(sol.begin() + logdeg + 1, sol.begin() + 2 * (logdeg + 1));
    tf.R.assign(sol.begin() + 2 * (logdeg + 1), sol.end());
    return tf;
}

// int_X^inf (log x)^j x^(-c) dx = Gamma(j+1, (c-1) log X) / (c-1)^(j+1)
Real log_power_tail(int j, int c, const Real& X, long prec) {
    Real u = log(X) * (c - 1);
    return gamma_upper(Real(j + 1, prec), u) / pow(Real(c - 1, prec), j + 1);
}

Real poly_tail_product(const std::vector<Real>& a, const std::vector<Real>& b, int c,
                       const Real& X, long prec) {
    // int_X^inf (sum a_i L^i)(sum b_j L^j) x^(-c) dx
    std::vector<Real> prod(a.size() + b.size() - 1, Real(prec));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    Real s(prec);
    for (size_t k = 0; k < prod.size(); ++k)
        s += prod[k] * log_power_tail(static_cast<int>(k), c, X, prec);
    return s;
}

Real fuse(const Integrand& fa, const Integrand& fb, TransformKernel kb, const PrecisionContext& outer_ctx) {
    const PrecisionContext& ctx = outer_ctx;
    long prec = ctx.work_bits() + 16;
    auto ha = [&](const Real& x) { return transform(TransformKernel::J, x, fa, ctx); };
    auto hb = [&](const Real& x) { return transform(kb, x, fb, ctx); };

    auto jy_only = [](const Integrand& g) {
        return g.oscillatory_count() > 0 && g.factor_envelope() == 0 &&
               g.exponent(Factor::I0) == 0 && g.exponent(Factor::K0) == 0 &&
               g.exponent(Factor::I1) == 0 && g.exponent(Factor::K1) == 0;
    };
    bool compact = jy_only(fa) && jy_only(fb) && kb == TransformKernel::J &&
                   fa.exponent(Factor::Y0) == 0 && fb.exponent(Factor::Y0) == 0;
    quad::Fn outer = [&](const Real& x) { return ha(x) * hb(x) * x; };
    Real target = pow10(-(ctx.work_digits() + 2), prec);

    if (compact) {
        // J-transforms of pure J0 products are compactly supported
        long sup = std::min(fa.oscillatory_count(), fb.oscillatory_count());
        Real total(prec), err(prec);
        for (long k = 0; k < sup; ++k) {
            auto e = quad::tanh_sinh(outer, Real(k, prec), Real(k + 1, prec), prec, target, 9);
            total += e.value;
            err += e.abs_error;
        }
        return total;
    }

    Real X0(48, prec);
    Real total(prec);
    {  // [0, X0] in log-spaced panels
        Real a(prec), b(1, prec);
        auto head = quad::tanh_sinh(outer, a, b, prec, target, 8);
        total += head.value;
        Real t0 = b;
        while (t0 < X0) {
            Real t1 = min(t0 * 2, X0);
            total += quad::gl_adaptive(outer, t0, t1, prec, target, 24, 6).value;
            t0 = t1;
        }
    }
    // fitted log-power tails
    int da = log_degree(fa), db = log_degree(fb);
    TailFit ta = fit_transform_tail(ha, da, X0, prec);
    TailFit tb = (kb == TransformKernel::J && &fa == &fb) ? ta : fit_transform_tail(hb, db, X0, prec);
    // ha hb x = Pa Pb/x^3 + (Pa Qb + Qa Pb)/x^5 + (Pa Rb + Qa Qb + Ra Pb)/x^7 + ...
    total += poly_tail_product(ta.P, tb.P, 3, X0, prec);
    total += poly_tail_product(ta.P, tb.Q, 5, X0, prec);
    total += poly_tail_product(ta.Q, tb.P, 5, X0, prec);
    total += poly_tail_product(ta.P, tb.R, 7, X0, prec);
    total += poly_tail_product(ta.Q, tb.Q, 7, X0, prec);
    total += poly_tail_product(ta.R, tb.P, 7, X0, prec);
    total += poly_tail_product(ta.Q, tb.R, 9, X0, prec);
    total += poly_tail_product(ta.R, tb.Q, 9, X0, prec);
    total += poly_tail_product(ta.R, tb.R, 11, X0, prec);
    return total;
}

}  // namespace

Real parseval_fuse(const Integrand& fa, const Integrand& fb, const PrecisionContext& ctx) {
    PrecisionContext half = ctx.with_digits(std::max(16, ctx.digits / 2));
    return fuse(fa, fb, TransformKernel::J, half);
}

Real hilbert_fuse(const Integrand& f, const PrecisionContext& ctx) {
    PrecisionContext half = ctx.with_digits(std::max(16, ctx.digits / 2));
    return fuse(f, f, TransformKernel::Y, half);
}

std::pair<Real, Real> wick_check(WickId id, const Real& sample_x, const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    Real pi = const_pi(prec);
    auto IK = [&](std::initializer_list<std::pair<Factor, int>> fs, int tp) {
        return Integrand::product(fs, tp);
    };
    switch (id) {
        case WickId::Ikm241ViaJ6:
            return {ikm(2, 4, 1, ctx).value, pow(pi, 4) / 30 * jym(6, 0, 1, ctx).value};
        case WickId::Ikm151ViaJ5Y:
            return {ikm(1, 5, 1, ctx).value, -pow(pi, 5) / 12 * jym(5, 1, 1, ctx).value};
        case WickId::ITransIIKK: {
            if (!(sample_x >= 0 && sample_x < 1)) throw std::domain_error("wick_check: x outside [0,1)");
            Real lhs = transform(TransformKernel::I, sample_x, IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1), ctx);
            Real rhs = pi * pi / 6 * transform(TransformKernel::J, sample_x, IK({{Factor::J0, 3}}, 1), ctx);
            return {lhs, rhs};
        }
        case WickId::ITransKKK: {
            if (!(sample_x >= 0 && sample_x < 3)) throw std::domain_error("wick_check: x outside [0,3)");
            Real lhs = transform(TransformKernel::I, sample_x, IK({{Factor::K0, 3}}, 1), ctx);
            Real rhs = -pow(pi, 3) / 8 *
                       (3 * transform(TransformKernel::J, sample_x, IK({{Factor::J0, 2}, {Factor::Y0, 1}}, 1), ctx) -
                        transform(TransformKernel::J, sample_x, IK({{Factor::Y0, 3}}, 1), ctx));
            return {lhs, rhs};
        }
        case WickId::KTransIKK: {
            Real lhs = 3 * transform(TransformKernel::K, sample_x, IK({{Factor::I0, 1}, {Factor::K0, 2}}, 1), ctx);
            Real rhs = -pow(pi, 3) / 8 *
                           (3 * transform(TransformKernel::J, sample_x, IK({{Factor::J0, 2}, {Factor::Y0, 1}}, 1), ctx) +
                            transform(TransformKernel::J, sample_x, IK({{Factor::Y0, 3}}, 1), ctx)) -
                       pow(pi, 3) / 4 * transform(TransformKernel::Y, sample_x, IK({{Factor::J0, 3}}, 1), ctx);
            return {lhs, rhs};
        }
        case WickId::Ikm261ViaJ6: {
            Real lhs = ikm(2, 6, 1, ctx).value * pow(2 / pi, 6);
            Real rhs = -Real(8, prec) / 7 * (jym(8, 0, 1, ctx).value - 7 * jym(6, 2, 1, ctx).value);
            return {lhs, rhs};
        }
        case WickId::Ikm441ViaJ6: {
            Real lhs = ikm(4, 4, 1, ctx).value * pow(2 / pi, 4);
            Real rhs = -Real(4, prec) / 5 * (jym(8, 0, 1, ctx).value - 5 * jym(6, 2, 1, ctx).value);
            return {lhs, rhs};
        }
        case WickId::Jym441ViaJ6: {
            Real lhs = jym(4, 4, 1, ctx).value;
            Real rhs = -Real(1, prec) / 5 * (jym(8, 0, 1, ctx).value - 10 * jym(6, 2, 1, ctx).value);
            return {lhs, rhs};
        }
        case WickId::JTransJJJJvsJJYY: {
            if (!(sample_x >= 0 && sample_x <= 2)) throw std::domain_error("wick_check: x outside [0,2]");
            Real lhs = transform(TransformKernel::J, sample_x, IK({{Factor::J0, 4}}, 1), ctx);
            Real rhs = 3 * transform(TransformKernel::J, sample_x, IK({{Factor::J0, 2}, {Factor::Y0, 2}}, 1), ctx);
            return {lhs, rhs};
        }
        case WickId::ITransIKKKvsJ3Y: {
            if (!(sample_x >= 0 && sample_x <= 2)) throw std::domain_error("wick_check: x outside [0,2]");
            Real lhs = pow(2 / pi, 3) * transform(TransformKernel::I, sample_x, IK({{Factor::I0, 1}, {Factor::K0, 3}}, 1), ctx);
            Real rhs = -2 * transform(TransformKernel::J, sample_x, IK({{Factor::J0, 3}, {Factor::Y0, 1}}, 1), ctx);
            return {lhs, rhs};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace bmlab::moments
