#pragma once

#include "spherepack/numeric.hpp"

#include <functional>

namespace spherepack {

struct GaussRule {
    std::vector<Real> nodes, weights;  // on [-1, 1]
};

// Gauss-Legendre rule of the given order at the current precision (cached).
const GaussRule& gauss_legendre(unsigned order);

struct IntegrandValue {
    Real value;
    Real error;  // absolute uncertainty of the sample itself
};

struct QuadratureResult {
    Real value;
    Real error;
    unsigned evaluations = 0;
};

struct AdaptiveOptions {
    unsigned order = 20;
    Real target = Real("1e-15");
    int max_depth = 40;
};

// Adaptive Gauss-Legendre: each panel compares orders n and 2n and is bisected
// until the difference is below its share of the target.
QuadratureResult integrate(const std::function<IntegrandValue(const Real&)>& f, const Real& a, const Real& b,
                           const AdaptiveOptions& opt);

} // namespace spherepack
