#pragma once

#include <vector>

#include "bmlab/modular.hpp"

namespace bmlab::eichler {

// Integration path: a vertical ray x0 + iy, y in [y_from, inf) with rational
// x0 in {0, +-1/2} (y_from = 0 meaning the cusp, handled by an involution
// split), or one of the paper's geodesic arcs z = c + r e^(i phi).
struct ContourPath {
    enum class Kind { Vertical, Arc };
    Kind kind = Kind::Vertical;
    // vertical
    mpq_class x0;
    Real y_from;
    // arc
    Complex center;
    Real radius;
    Real phi_from, phi_to;

    static ContourPath vertical(mpq_class x, Real y) {
        ContourPath p;
        p.kind = Kind::Vertical;
        p.x0 = std::move(x);
        p.y_from = std::move(y);
        return p;
    }
    static ContourPath arc(Complex c, Real r, Real a, Real b) {
        ContourPath p;
        p.kind = Kind::Arc;
        p.center = std::move(c);
        p.radius = std::move(r);
        p.phi_from = std::move(a);
        p.phi_to = std::move(b);
        return p;
    }
};

struct EichlerSpec {
    modular::NamedForm form;
    std::vector<Complex> poly;  // polynomial in z, ascending coefficients
    ContourPath path;
};

// Termwise integral int f(z) p(z) dz along a vertical ray: every series term
// a(n) q^n z^k integrates to polynomial-times-exponential closed form
// (incomplete gamma pieces). Requires integer q-powers.
Complex vertical_termwise(const modular::QSeries& f, const mpq_class& x0, const Real& y_from,
                          const std::vector<Complex>& poly, const PrecisionContext& ctx);

// Vertical Eichler integral. y_from = 0 triggers the recorded involution
// split: Fricke at |z| = 1/sqrt6 on the imaginary axis, W3 at the fixed
// point on Re z = 1/2.
Complex eichler_vertical(const EichlerSpec& spec, const PrecisionContext& ctx);

// Arc integral by adaptive Gauss-Legendre panels in the arc parameter,
// evaluating the form pointwise (which self-routes near the cusps).
Complex eichler_arc(const EichlerSpec& spec, const PrecisionContext& ctx);

// Critical L-value by the exponentially convergent two-piece split at
// n/sqrt6 using the recorded Fricke data.
Real lvalue(modular::NamedForm form, int s, const PrecisionContext& ctx);

// Independent route: numeric contour quadrature of the completed L-integral
// (no termwise sums).
Real lvalue_via_contour(modular::NamedForm form, int s, const PrecisionContext& ctx);

// The paper's explicit polynomial-in-(pi n) exponential sums for
// (f46, 3), (f66, 3), (f66, 5); one printed coefficient is corrected, see
// the comment in the implementation.
Real lvalue_explicit(modular::NamedForm form, int s, const PrecisionContext& ctx);

// The Eichler integral family: order 0..2 are contour integrals of the
// weight-4 kernel against (z - z')^2, (z - z'), 1; order 3 is the closed
// form -24 pi^3 i [Z63^2 X63 sqrt(1+4X63) sqrt(1+16X63)](z); order 4 its
// Cauchy derivative. The point must lie on the Re z = 1/2 contour.
Complex eichler_E(int order, const Complex& z, const PrecisionContext& ctx);

// Broadhurst G-integrals: shift 0 gives IKM(2,4;3), shift 1 gives IKM(1,5;3).
Real broadhurst_G(int s_shift, const PrecisionContext& ctx);

// The four eta-quotient terms of G/96 (shared with the q-expansion identity
// test in the registry).
const std::vector<modular::EtaQuotientPart>& broadhurst_G_terms();

}  // namespace bmlab::eichler
