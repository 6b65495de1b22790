#include "bmlab/modular.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace bmlab::modular {

namespace {

ModularFormSpec make_f46() {
    ModularFormSpec s;
    s.name = "f46";
    s.weight = 4;
    s.recipe = {{mpq_class(1), {{1, 2}, {2, 2}, {3, 2}, {6, 2}}}};
    s.fricke_sign = +1;
    s.w2_sign = +1;
    s.w3_sign = +1;
    return s;
}

ModularFormSpec make_f66() {
    ModularFormSpec s;
    s.name = "f66";
    s.weight = 6;
    s.recipe = {{mpq_class(1), {{2, 9}, {3, 9}, {1, -3}, {6, -3}}},
                {mpq_class(1), {{1, 9}, {6, 9}, {2, -3}, {3, -3}}}};
    s.companion = {{mpq_class(1), {{1, 5}, {2, 5}, {3, 1}, {6, 1}}},
                   {mpq_class(9), {{1, 1}, {2, 1}, {3, 5}, {6, 5}}}};
    s.fricke_sign = -1;
    s.w2_sign = -1;
    s.w3_sign = +1;
    return s;
}

ModularFormSpec make_x63() {
    ModularFormSpec s;
    s.name = "X63";
    s.weight = 0;
    s.recipe = {{mpq_class(1), {{2, 6}, {6, 6}, {1, -6}, {3, -6}}}};
    s.w3_sign = +1;
    return s;
}

ModularFormSpec make_z63() {
    ModularFormSpec s;
    s.name = "Z63";
    s.weight = 2;
    s.recipe = {{mpq_class(1), {{1, 4}, {3, 4}, {2, -2}, {6, -2}}}};
    s.w3_sign = -1;
    return s;
}

ModularFormSpec make_x62() {
    ModularFormSpec s;
    s.name = "X62";
    s.weight = 0;
    s.recipe = {{mpq_class(1), {{3, 4}, {6, 4}, {1, -4}, {2, -4}}}};
    s.w2_sign = +1;
    return s;
}

ModularFormSpec make_z62() {
    ModularFormSpec s;
    s.name = "Z62";
    s.weight = 2;
    s.recipe = {{mpq_class(1), {{1, 3}, {2, 3}, {3, -1}, {6, -1}}}};
    return s;
}

// Weight-4 Eichler integrand Z63^2 X63 sqrt(1+4X63) sqrt(1+16X63)
//   = [eta2 eta6/(eta1 eta3)]^3 { [eta1 eta2]^4 + 9 [eta3 eta6]^4 }
//   = Z63(z)/(2 pi i) dX63(z)/dz.
ModularFormSpec make_kernel46() {
    ModularFormSpec s;
    s.name = "w4kernel";
    s.weight = 4;
    s.recipe = {{mpq_class(1), {{1, 1}, {2, 7}, {3, -3}, {6, 3}}},
                {mpq_class(9), {{1, -3}, {2, 3}, {3, 1}, {6, 7}}}};
    s.w3_sign = -1;
    return s;
}

}  // namespace

const ModularFormSpec& form_spec(NamedForm f) {
    static const ModularFormSpec f46 = make_f46();
    static const ModularFormSpec f66 = make_f66();
    static const ModularFormSpec x63 = make_x63();
    static const ModularFormSpec z63 = make_z63();
    static const ModularFormSpec x62 = make_x62();
    static const ModularFormSpec z62 = make_z62();
    static const ModularFormSpec k46 = make_kernel46();
    switch (f) {
        case NamedForm::F46: return f46;
        case NamedForm::F66: return f66;
        case NamedForm::X63: return x63;
        case NamedForm::Z63: return z63;
        case NamedForm::X62: return x62;
        case NamedForm::Z62: return z62;
        case NamedForm::EichlerKernel46: return k46;
    }
    throw std::logic_error("unreachable");
}

const ModularFormSpec& form_spec_by_name(const std::string& name) {
    for (NamedForm f : {NamedForm::F46, NamedForm::F66, NamedForm::X63, NamedForm::Z63,
                        NamedForm::X62, NamedForm::Z62, NamedForm::EichlerKernel46}) {
        if (form_spec(f).name == name) return form_spec(f);
    }
    throw std::invalid_argument("unknown form name: " + name);
}

QSeries quotient_qseries(const std::vector<EtaQuotientPart>& recipe, long N) {
    QSeries sum;
    for (const auto& part : recipe) {
        QSeries q = eta_quotient_qseries(part.terms, N);
        q *= part.coeff;
        if (sum.empty()) sum = std::move(q);
        else sum += q;
    }
    return sum;
}

const QSeries& form_qseries(NamedForm f, long N) {
    static std::mutex mu;
    static std::map<std::pair<int, long>, QSeries> cache;
    std::lock_guard<std::mutex> lock(mu);
    // round N up to limit cache churn across nearby truncation requests
    long n = ((N + 63) / 64 + 1) * 64;
    auto key = std::make_pair(static_cast<int>(f), n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, quotient_qseries(form_spec(f).recipe, n)).first;
    return it->second;
}

long truncation_order(double y_min, const PrecisionContext& ctx) {
    return static_cast<long>(std::ceil(ctx.work_digits() * 2.302585093 / (2 * 3.14159265358979 * y_min))) + 16;
}

Complex eta_point(const Complex& z, const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    if (!(z.im > 0)) throw std::domain_error("eta_point: Im z must be positive");
    Complex w{Real(prec), Real(prec)};
    mpfr_set(w.re.raw(), z.re.raw(), MPFR_RNDN);
    mpfr_set(w.im.raw(), z.im.raw(), MPFR_RNDN);
    Complex mult(1, prec);
    Real pi = const_pi(prec);
    // reduce toward the fundamental domain: eta(z0) = mult * eta(w)
    for (int iter = 0; iter < 256; ++iter) {
        Real n = round_nearest(w.re);
        if (!n.is_zero()) {
            w.re -= n;
            Real phase = pi * n / 12;
            mult *= Complex(cos(phase), sin(phase));
        }
        if (w.im >= Real::from_ratio(1, 2, prec)) break;
        Real norm = w.re * w.re + w.im * w.im;
        if (norm >= 1) break;
        // w = -1/w', multiplier sqrt(w'/i)
        Complex wp = -Complex(1, prec) / w;
        mult *= sqrt(Complex(wp.im, -wp.re));  // wp/i
        w = wp;
    }
    // pentagonal series at the reduced point
    Complex q24 = exp(Complex(-pi * w.im / 12, pi * w.re / 12));
    Complex q = pow(q24, 24);
    Complex s(1, prec);
    double ymin = w.im.to_double();
    long span = truncation_order(ymin, ctx);
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        if (e1 > span) break;
        Complex t = pow(q, e1) + pow(q, e2);
        if (k & 1) s -= t;
        else s += t;
    }
    return mult * q24 * s;
}

Complex theta_point(const Complex& z, const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    if (!(z.im > 0)) throw std::domain_error("theta_point: Im z must be positive");
    Real pi = const_pi(prec);
    Complex zz{Real(prec), Real(prec)};
    mpfr_set(zz.re.raw(), z.re.raw(), MPFR_RNDN);
    mpfr_set(zz.im.raw(), z.im.raw(), MPFR_RNDN);
    Complex qh = exp(Complex(-pi * zz.im, pi * zz.re));  // e^(pi i z)
    Complex s(1, prec);
    Complex qn(1, prec);
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    for (long n = 1; n < 100000; ++n) {
        // q^(n^2) = q^((n-1)^2) * q^(2n-1)
        qn *= pow(qh, 2 * n - 1);
        s += 2 * qn;
        if (abs(qn) < tol) break;
    }
    return s;
}

Complex eval_quotient(const std::vector<EtaQuotientPart>& recipe, const Complex& z,
                      const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    Complex total(prec);
    for (const auto& part : recipe) {
        Complex prod(1, prec);
        for (const auto& t : part.terms) {
            Complex e = eta_point(z * t.multiplier, ctx);
            prod *= pow(e, t.exponent);
        }
        Real coef(prec);
        mpfr_set_q(coef.raw(), part.coeff.get_mpq_t(), MPFR_RNDN);
        total += prod * coef;
    }
    return total;
}

namespace {

struct Involution {
    // z -> (a z + b) / (c z + d), det = Q
    long a, b, c, d, Q;
    std::optional<int> ModularFormSpec::* sign;
};

const Involution kInvolutions[] = {
    {0, -1, 6, 0, 6, &ModularFormSpec::fricke_sign},
    {2, -1, 6, -2, 2, &ModularFormSpec::w2_sign},
    {3, -2, 6, -3, 3, &ModularFormSpec::w3_sign},
};

Complex moebius(const Involution& w, const Complex& z) {
    Complex num = z * w.a + Real(w.b, z.prec());
    Complex den = z * w.c + Real(w.d, z.prec());
    return num / den;
}

}  // namespace

Complex eval_form(NamedForm f, const UpperHalfPoint& pt, const PrecisionContext& ctx) {
    const ModularFormSpec& spec = form_spec(f);
    long prec = ctx.work_bits() + 16;
    Complex w{Real(prec), Real(prec)};
    mpfr_set(w.re.raw(), pt.z.re.raw(), MPFR_RNDN);
    mpfr_set(w.im.raw(), pt.z.im.raw(), MPFR_RNDN);
    Complex mult(1, prec);
    const Real low = Real::from_ratio(12, 100, prec);
    for (int iter = 0; iter < 16; ++iter) {
        // all named forms have integer q-powers, so z -> z+1 is a symmetry
        Real n = round_nearest(w.re);
        if (!n.is_zero()) w.re -= n;
        if (w.im >= low) break;
        // pick the recorded involution that lifts Im z the most
        const Involution* best = nullptr;
        Real best_im = w.im;
        for (const auto& inv : kInvolutions) {
            if (!(spec.*(inv.sign)).has_value()) continue;
            Complex img = moebius(inv, w);
            if (img.im > best_im) {
                best = &inv;
                best_im = img.im;
            }
        }
        if (!best) break;
        Complex u = moebius(*best, w);
        // f(w) = f(W u) = sign * (Q (c u + d)^2 / Q^2 * Q)^(k/2) ... compact:
        // base(u) = (c u + d)^2 / Q, law f(W u) = sign * base(u)^(k/2) f(u)
        Complex cu_d = u * best->c + Real(best->d, prec);
        Complex base = cu_d * cu_d / best->Q;
        int sgn = *(spec.*(best->sign));
        mult *= pow(base, spec.weight / 2) * sgn;
        w = u;
    }
    double ymin = w.im.to_double();
    if (ymin < 0.01) throw std::runtime_error("eval_form: point could not be routed away from the cusps");
    long N = truncation_order(ymin, ctx);
    const QSeries& qs = form_qseries(f, N);
    return mult * qs.eval(w, prec);
}

Complex eisenstein(Eisenstein kind, const UpperHalfPoint& pt, const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    Real pi = const_pi(prec);
    Complex z{Real(prec), Real(prec)};
    mpfr_set(z.re.raw(), pt.z.re.raw(), MPFR_RNDN);
    mpfr_set(z.im.raw(), pt.z.im.raw(), MPFR_RNDN);
    int a = kind == Eisenstein::E4 ? 3 : kind == Eisenstein::E6 ? 5 : 1;
    long coefnum = kind == Eisenstein::E4 ? 240 : kind == Eisenstein::E6 ? -504 : -24;
    Complex q = exp(Complex(-2 * pi * z.im, 2 * pi * z.re));
    Complex qn(1, prec);
    Complex s(prec);
    Real tol = mul_2si(Real(1, prec), -prec - 8);
    Complex one(1, prec);
    for (long n = 1; n < 1000000; ++n) {
        qn *= q;
        Complex term = qn / (one - qn);
        term *= pow(Real(n, prec), a);
        s += term;
        if (abs(term) < tol) break;
    }
    Complex r = one + s * Real(coefnum, prec);
    if (kind == Eisenstein::E2) r.re -= 3 / (pi * z.im);
    return r;
}

CmDerivatives cm_derivative_table(const UpperHalfPoint& pt, int orders, const PrecisionContext& ctx) {
    if (orders > 4) throw std::invalid_argument("cm_derivative_table: orders up to 4");
    long prec = ctx.work_bits() + 16;
    const long M = 64L * std::max(ctx.digits / 10, 1);
    Real r = Real::from_ratio(1, 20, prec);  // contour radius 0.05
    if (!(pt.z.im > r * 2)) throw std::domain_error("cm_derivative_table: contour leaves the domain");
    Real pi = const_pi(prec);
    std::vector<Complex> xs, zs;
    xs.reserve(M);
    zs.reserve(M);
    const auto& xspec = form_spec(NamedForm::X63).recipe;
    const auto& zspec = form_spec(NamedForm::Z63).recipe;
    for (long k = 0; k < M; ++k) {
        Real th = 2 * pi * k / M;
        Complex p = pt.z + Complex(r * cos(th), r * sin(th));
        xs.push_back(eval_quotient(xspec, p, ctx));
        zs.push_back(eval_quotient(zspec, p, ctx));
    }
    CmDerivatives out;
    Real kfact(1, prec);
    for (int k = 0; k <= orders; ++k) {
        if (k > 0) kfact *= k;
        Complex sx(prec), sz(prec);
        for (long m = 0; m < M; ++m) {
            Real th = -2 * pi * ((k * m) % M) / M;
            Complex rot(cos(th), sin(th));
            sx += xs[m] * rot;
            sz += zs[m] * rot;
        }
        Real scale = kfact / (M * pow(r, k));
        out.x63.push_back(sx * scale);
        out.z63.push_back(sz * scale);
    }
    return out;
}

Complex x63_derivative_jacobian(const UpperHalfPoint& pt, const PrecisionContext& ctx) {
    long prec = ctx.work_bits() + 16;
    std::vector<EtaQuotientPart> s = {{mpq_class(1), {{1, 3}, {2, 3}, {3, -1}, {6, -1}}},
                                      {mpq_class(9), {{1, -1}, {2, -1}, {3, 3}, {6, 3}}}};
    Complex x = eval_quotient(form_spec(NamedForm::X63).recipe, pt.z, ctx);
    Complex jac = eval_quotient(s, pt.z, ctx);
    Real pi = const_pi(prec);
    return Complex(Real(prec), 2 * pi) * x * jac;
}

}  // namespace bmlab::modular
