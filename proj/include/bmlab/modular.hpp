#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmlab/qseries.hpp"

namespace bmlab::modular {

// A point of the upper half-plane; Im z > 0 enforced on construction.
struct UpperHalfPoint {
    Complex z;
    explicit UpperHalfPoint(Complex zz) : z(std::move(zz)) {
        if (!(z.im > 0)) throw std::domain_error("UpperHalfPoint: Im z must be positive");
    }
};

// One summand of an eta-quotient combination: coeff * prod eta(m z)^e.
struct EtaQuotientPart {
    mpq_class coeff;
    std::vector<EtaTerm> terms;
};

// Declarative recipe for a named form. Weight-k forms here are Atkin-Lehner
// eigenvectors on Gamma_0(6)(+): the involution data records
//   f(W_Q z) = sign * (Q (c_Q z + d_Q)^2)^(k/2) * f(z)
// with (c_Q, d_Q) = (6,-2)/sqrt2-type rows; signs were determined numerically
// and are re-verified by the registry's transformation-law identities.
struct ModularFormSpec {
    std::string name;
    int weight = 0;
    std::vector<EtaQuotientPart> recipe;
    std::vector<EtaQuotientPart> companion;  // empty if none
    std::optional<int> fricke_sign;          // W6: z -> -1/(6z)
    std::optional<int> w2_sign;              // W2: z -> (2z-1)/(6z-2)
    std::optional<int> w3_sign;              // W3: z -> (3z-2)/(6z-3)
};

enum class NamedForm { F46, F66, X63, Z63, X62, Z62, EichlerKernel46 };

const ModularFormSpec& form_spec(NamedForm f);
const ModularFormSpec& form_spec_by_name(const std::string& name);  // also "eta", "theta"

// Exact truncated q-expansion of a recipe (sum of eta quotients); N full
// powers of q are exact.
QSeries quotient_qseries(const std::vector<EtaQuotientPart>& recipe, long N);

// Memoized expansions of the named forms (concurrent reads safe; single
// writer populates under a mutex).
const QSeries& form_qseries(NamedForm f, long N);

// Truncation rule: enough terms that |q|^N is below the target precision at
// height y, with coefficient-growth margin.
long truncation_order(double y_min, const PrecisionContext& ctx);

// Dedekind eta at any point of the upper half-plane (SL2 reduction to the
// fundamental domain, then the pentagonal series).
Complex eta_point(const Complex& z, const PrecisionContext& ctx);

// Jacobi theta(z) = sum e^(pi i n^2 z).
Complex theta_point(const Complex& z, const PrecisionContext& ctx);

// Numeric value of a named form. Points with Im z < 0.12 route through the
// recorded involution/translation table before the q-series is summed.
Complex eval_form(NamedForm f, const UpperHalfPoint& pt, const PrecisionContext& ctx);

// Numeric value of an arbitrary eta-quotient combination, evaluated factor by
// factor through eta_point (robust at any height).
Complex eval_quotient(const std::vector<EtaQuotientPart>& recipe, const Complex& z,
                      const PrecisionContext& ctx);

enum class Eisenstein { E2, E4, E6, E2star };

// Eisenstein series. E2star is the holomorphic weight-2 series
// 1 - 24 sum sigma_1(n) q^n; E2 is its modular completion
// E2star(z) - 3/(pi Im z).
Complex eisenstein(Eisenstein kind, const UpperHalfPoint& pt, const PrecisionContext& ctx);

// Derivatives of X63 and Z63 at a CM point by Cauchy-circle differentiation
// (radius 0.05, 64*digits/10 nodes). orders <= 4.
struct CmDerivatives {
    std::vector<Complex> x63;  // X63, X63', ..., X63^(orders)
    std::vector<Complex> z63;
};
CmDerivatives cm_derivative_table(const UpperHalfPoint& pt, int orders, const PrecisionContext& ctx);

// First derivative of X63 via the Jacobian identity
// X63'(z) = 2 pi i X63(z) { [eta1 eta2]^3/(eta3 eta6) + 9 [eta3 eta6]^3/(eta1 eta2) },
// the cross-route for the Cauchy circle.
Complex x63_derivative_jacobian(const UpperHalfPoint& pt, const PrecisionContext& ctx);

}  // namespace bmlab::modular
