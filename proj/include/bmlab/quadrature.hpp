#pragma once

#include <functional>
#include <vector>

#include "bmlab/precision.hpp"
#include "bmlab/real.hpp"

namespace bmlab::quad {

using Fn = std::function<Real(const Real&)>;

struct Estimate {
    Real value;
    Real abs_error;
    long evaluations = 0;
};

// Gauss-Legendre nodes/weights on [-1,1]; cached per (order, precision).
struct GLTable {
    std::vector<Real> x;
    std::vector<Real> w;
};
const GLTable& gauss_legendre(int order, long prec_bits);

Real gl_apply(const Fn& f, const Real& a, const Real& b, int order, long prec_bits);

// Adaptive Gauss-Legendre: order vs order*2 disagreement splits the panel.
Estimate gl_adaptive(const Fn& f, const Real& a, const Real& b, long prec_bits,
                     const Real& target_abs, int order = 24, int max_depth = 14);

// tanh-sinh rule on [a, b]; nodes are generated stably from the nearest
// endpoint so integrable endpoint singularities (log, algebraic) are fine.
Estimate tanh_sinh(const Fn& f, const Real& a, const Real& b, long prec_bits,
                   const Real& target_abs, int max_level = 11);

// Wynn epsilon acceleration of a sequence of partial sums. Returns the
// successive diagonal estimates (even columns); the caller checks that the
// last few agree.
std::vector<Real> wynn_epsilon(const std::vector<Real>& sums);

}  // namespace bmlab::quad
