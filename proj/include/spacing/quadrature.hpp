#pragma once

#include "spacing/interval.hpp"
#include "spacing/kernels.hpp"

#include <vector>

namespace spacing {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

/// n-point Gauss–Legendre rule on J, mapped affinely from (-1, 1).
/// Throws ArgumentError for n < 1 or a degenerate interval.
QuadratureRule gauss_legendre(int n, const Interval& J);

/// Gauss–Legendre rule in u = sqrt(x) on (sqrt(lo), sqrt(hi)), returned in
/// the x variable (nodes u^2, weights 2u w). Requires lo >= 0.
QuadratureRule sqrt_graded_legendre(int n, const Interval& J);

/// Discretized operator spectrum. Eigenvalues are sorted descending.
struct FredholmSpectrum {
    std::vector<double> eigenvalues;
    KernelSpec kernel;
    Interval interval;
    int nodes_used = 0;
    /// Quadrature estimate of the trace, sum_i w_i K(x_i, x_i).
    double trace_estimate = 0.0;
    /// Magnitude of the most negative eigenvalue clamped to zero.
    double clamped_epsilon = 0.0;
};

/// Eigenvalues of [sqrt(w_i) K(x_i, x_j) sqrt(w_j)] on an n-point rule.
/// Hard-edge kernels use the square-root graded rule.
FredholmSpectrum nystrom_spectrum(const KernelSpec& kernel, const Interval& J, int n);

/// Node count used as the starting point of the doubling loop.
int default_nodes(const KernelSpec& kernel, const Interval& J);

}  // namespace spacing
