#include "bmlab/qseries.hpp"

#include <numeric>
#include <stdexcept>

namespace bmlab::modular {

namespace {
const mpq_class kZero(0);

long gcd_l(long a, long b) { return std::gcd(a, b); }
}  // namespace

QSeries::QSeries(long lead, long step, std::vector<mpq_class> coeffs)
    : lead24(lead), step24(step), c(std::move(coeffs)) {
    valid24 = lead24 + step24 * terms();
}

const mpq_class& QSeries::coeff24(long e24) const {
    if (e24 < lead24 || (e24 - lead24) % step24 != 0) return kZero;
    long j = (e24 - lead24) / step24;
    if (j >= terms()) return kZero;
    return c[j];
}

namespace {
// Re-grid a series onto (lead24', step24') covering the same exponents.
QSeries regrid(const QSeries& s, long lead, long step, long valid) {
    QSeries r;
    r.lead24 = lead;
    r.step24 = step;
    r.valid24 = valid;
    long n = (valid - lead + step - 1) / step;
    if (n < 0) n = 0;
    r.c.assign(n, mpq_class(0));
    for (long j = 0; j < s.terms(); ++j) {
        long e = s.lead24 + j * s.step24;
        if (e >= valid) break;
        r.c[(e - lead) / step] = s.c[j];
    }
    return r;
}
}  // namespace

QSeries& QSeries::operator+=(const QSeries& o) {
    if (o.empty()) return *this;
    if (empty()) { *this = o; return *this; }
    long step = gcd_l(gcd_l(step24, o.step24), std::abs(lead24 - o.lead24) > 0 ? std::abs(lead24 - o.lead24) : step24);
    long lead = std::min(lead24, o.lead24);
    long valid = std::min(valid24, o.valid24);
    QSeries r = regrid(*this, lead, step, valid);
    for (long j = 0; j < o.terms(); ++j) {
        long e = o.lead24 + j * o.step24;
        if (e >= valid) break;
        r.c[(e - lead) / step] += o.c[j];
    }
    *this = std::move(r);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
    QSeries neg = o;
    for (auto& x : neg.c) x = -x;
    return *this += neg;
}

QSeries& QSeries::operator*=(const QSeries& o) {
    if (empty() || o.empty()) {
        c.clear();
        return *this;
    }
    long step = gcd_l(step24, o.step24);
    long lead = lead24 + o.lead24;
    // product exact below min(validA + leadB, validB + leadA)
    long valid = std::min(valid24 + o.lead24, o.valid24 + lead24);
    long n = (valid - lead + step - 1) / step;
    std::vector<mpq_class> out(std::max<long>(n, 0), mpq_class(0));
    for (long i = 0; i < terms(); ++i) {
        if (c[i] == 0) continue;
        long ea = lead24 + i * step24;
        if (ea + o.lead24 >= valid) break;
        for (long j = 0; j < o.terms(); ++j) {
            long e = ea + o.lead24 + j * o.step24;
            if (e >= valid) break;
            if (o.c[j] == 0) continue;
            out[(e - lead) / step] += c[i] * o.c[j];
        }
    }
    lead24 = lead;
    step24 = step;
    valid24 = valid;
    c = std::move(out);
    return *this;
}

QSeries& QSeries::operator*=(const mpq_class& s) {
    for (auto& x : c) x *= s;
    return *this;
}

QSeries QSeries::inverse() const {
    if (empty() || c[0] == 0)
        throw std::domain_error("QSeries::inverse: leading coefficient must be nonzero");
    QSeries r;
    r.lead24 = -lead24;
    r.step24 = step24;
    r.valid24 = valid24 - 2 * lead24;
    long n = terms();
    r.c.assign(n, mpq_class(0));
    r.c[0] = 1 / c[0];
    for (long m = 1; m < n; ++m) {
        mpq_class s(0);
        for (long k = 1; k <= m; ++k) s += c[k] * r.c[m - k];
        r.c[m] = -s / c[0];
    }
    return r;
}

QSeries QSeries::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QSeries r(0, step24, {mpq_class(1)});
    r.valid24 = valid24 - lead24;  // relative truncation span
    if (e == 0) return r;
    QSeries base = *this;
    long ee = e;
    while (ee) {
        if (ee & 1) r *= base;
        ee >>= 1;
        if (ee) base *= base;
    }
    return r;
}

QSeries QSeries::qdq() const {
    QSeries r = *this;
    for (long j = 0; j < r.terms(); ++j) {
        long e = r.lead24 + j * r.step24;
        mpq_class f(e, 24);
        f.canonicalize();
        r.c[j] *= f;
    }
    return r;
}

Complex QSeries::eval(const Complex& z, long prec_bits) const {
    // w = e^(2 pi i z / 24); assumes Im z > 0 so |w| < 1.
    Real pi = const_pi(prec_bits);
    Complex zz{Real(prec_bits), Real(prec_bits)};
    mpfr_set(zz.re.raw(), z.re.raw(), MPFR_RNDN);
    mpfr_set(zz.im.raw(), z.im.raw(), MPFR_RNDN);
    Complex w = exp(Complex(-pi * zz.im / 12, pi * zz.re / 12));
    Complex wstep = bmlab::pow(w, step24);
    Complex acc(prec_bits);
    for (long j = terms() - 1; j >= 0; --j) {
        acc *= wstep;
        if (c[j] != 0) {
            Real coef(prec_bits);
            mpfr_set_q(coef.raw(), c[j].get_mpq_t(), MPFR_RNDN);
            acc.re += coef;
        }
    }
    return acc * bmlab::pow(w, lead24);
}

std::string QSeries::to_csv() const {
    std::string out = "n,numerator,denominator\n";
    for (long j = 0; j < terms(); ++j) {
        if (c[j] == 0) continue;
        long e = lead24 + j * step24;
        mpq_class ne(e, 24);
        ne.canonicalize();
        std::string n = ne.get_str();
        out += n + "," + c[j].get_num().get_str() + "," + c[j].get_den().get_str() + "\n";
    }
    return out;
}

bool QSeries::identical_coeffs(const QSeries& o, long nterms) const {
    for (long j = 0; j < nterms; ++j) {
        long e = lead24 + j * step24;
        if (coeff24(e) != o.coeff24(e)) return false;
    }
    if (o.lead24 < lead24) return false;
    return true;
}

QSeries eta_qseries_factor(int m, long N) {
    if (N < 1) throw std::invalid_argument("eta_qseries: N must be >= 1");
    // prod (1 - q^(m n)) by Euler's pentagonal number theorem.
    long span = 24 * (N + 1);  // exact below q^(N+1) (ignoring the q^(m/24) prefactor)
    long nterms = (span + 24 * m - 1) / (24 * m);
    std::vector<mpq_class> c(nterms, mpq_class(0));
    c[0] = 1;
    for (long k = 1;; ++k) {
        long e1 = m * k * (3 * k - 1) / 2;
        long e2 = m * k * (3 * k + 1) / 2;
        if (e1 * 24 >= span && e2 * 24 >= span) break;
        int sgn = (k % 2 == 0) ? 1 : -1;
        if (e1 * 24 < span) c[e1 / m] += sgn;
        if (e2 * 24 < span) c[e2 / m] += sgn;
    }
    QSeries r(m, 24 * m, std::move(c));
    r.valid24 = m + span;
    return r;
}

QSeries eta_qseries(long N) { return eta_qseries_factor(1, N); }

QSeries theta_qseries(long N) {
    // sum_{n in Z} q^(n^2 / 2): exponents 12 n^2 on the 1/24 grid.
    long span = 24 * (N + 1);
    long nterms = (span + 11) / 12;
    std::vector<mpq_class> c(nterms, mpq_class(0));
    c[0] = 1;
    for (long n = 1; 12 * n * n < span; ++n) c[n * n] = 2;
    QSeries r(0, 12, std::move(c));
    r.valid24 = span;
    return r;
}

QSeries eta_quotient_qseries(const std::vector<EtaTerm>& terms, long N) {
    if (N < 1) throw std::invalid_argument("eta_quotient_qseries: truncation too small");
    QSeries r(0, 24, {mpq_class(1)});
    r.valid24 = 24 * (N + 1);
    long lead = 0;
    for (const auto& t : terms) {
        QSeries f = eta_qseries_factor(t.multiplier, N);
        // strip the q^(m/24) prefactor; track it exactly in `lead`
        f.lead24 -= t.multiplier;
        f.valid24 -= t.multiplier;
        lead += t.multiplier * t.exponent;
        r *= f.pow(t.exponent);
    }
    r.lead24 += lead;
    r.valid24 += lead;
    return r;
}

}  // namespace bmlab::modular
