#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bmlab/complex.hpp"
#include "bmlab/precision.hpp"

namespace bmlab::verify {

enum class ToleranceClass { Tight, Loose };

// One verifiable statement: two independently evaluated sides plus the
// provenance anchor. Recipes share no quadrature call path where an
// independent route exists; `independent_routes` records that audit.
struct IdentityRecord {
    std::string id;
    std::string description;
    std::string paper_anchor;
    ToleranceClass tolerance_class = ToleranceClass::Tight;
    bool independent_routes = true;
    std::function<std::pair<Complex, Complex>(const PrecisionContext&)> eval;
};

struct VerificationResult {
    std::string id;
    std::string description;
    std::string paper_anchor;
    Complex lhs, rhs;
    Real abs_residual;
    Real rel_residual;
    Real tolerance;
    bool pass = false;
    double seconds = 0;
    std::string error;  // divergence or recipe failure, never a silent abort
};

// tight = 10^-(digits-8); after the acceptance anchors, loose =
// 10^-min(digits/2, 15).
Real tight_tolerance(const PrecisionContext& ctx);
Real loose_tolerance(const PrecisionContext& ctx);

const std::vector<IdentityRecord>& registry();

VerificationResult run(const std::string& id, const PrecisionContext& ctx);

// Evaluates every record whose id starts with `filter` ("all" selects
// everything); results are ordered by registry order regardless of
// parallelism. Unknown filters give an empty list.
std::vector<VerificationResult> run_suite(const std::string& filter, const PrecisionContext& ctx,
                                          int parallelism = 1);

}  // namespace bmlab::verify
