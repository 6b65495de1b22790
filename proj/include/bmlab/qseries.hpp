#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "bmlab/complex.hpp"
#include "bmlab/precision.hpp"

namespace bmlab::modular {

// Truncated Laurent-style q-expansion with exact rational coefficients.
// Exponents live on the grid (lead24 + j*step24)/24; step24 divides 24*m for
// the eta/theta building blocks used here. `valid24` is the smallest exponent
// (in 1/24 units) NOT represented: the expansion is exact below it.
class QSeries {
  public:
    long lead24 = 0;
    long step24 = 24;
    long valid24 = 0;
    std::vector<mpq_class> c;

    QSeries() = default;
    QSeries(long lead, long step, std::vector<mpq_class> coeffs);

    long terms() const { return static_cast<long>(c.size()); }
    bool empty() const { return c.empty(); }

    const mpq_class& coeff24(long e24) const;  // coefficient at exponent e24/24 (0 if absent)
    // Coefficient a(n) of q^n for integer-exponent series.
    const mpq_class& a(long n) const { return coeff24(24 * n); }

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const QSeries& o);
    QSeries& operator*=(const mpq_class& s);
    friend QSeries operator+(QSeries x, const QSeries& y) { x += y; return x; }
    friend QSeries operator-(QSeries x, const QSeries& y) { x -= y; return x; }
    friend QSeries operator*(QSeries x, const QSeries& y) { x *= y; return x; }
    friend QSeries operator*(QSeries x, const mpq_class& s) { x *= s; return x; }

    // Integer powers; negative powers require a nonzero leading coefficient.
    QSeries pow(long e) const;
    QSeries inverse() const;

    // q d/dq: multiplies each term by its exponent.
    QSeries qdq() const;

    // Numeric evaluation at a point of the upper half-plane, via
    // w = e^(2 pi i z / 24) and Horner in w^step24.
    Complex eval(const Complex& z, long prec_bits) const;

    // CSV rows "n,numerator,denominator" (n as exact rational exponent).
    std::string to_csv() const;

    bool identical_coeffs(const QSeries& o, long nterms) const;
};

// Dedekind eta factor eta(m z) = q^(m/24) prod (1 - q^(m n)), truncated so the
// expansion is exact for exponents below (N+1) full powers of q.
QSeries eta_qseries_factor(int m, long N);

// eta(z) itself (m = 1); the spec-level eta_qseries operation.
QSeries eta_qseries(long N);

// Jacobi theta(z) = sum_n e^(pi i n^2 z) = sum q^(n^2/2); step 12 grid.
QSeries theta_qseries(long N);

// Eta quotient prod eta(m z)^e for terms (m, e).
struct EtaTerm {
    int multiplier;  // 1, 2, 3 or 6
    int exponent;
};
QSeries eta_quotient_qseries(const std::vector<EtaTerm>& terms, long N);

}  // namespace bmlab::modular
