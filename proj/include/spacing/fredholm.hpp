#pragma once

#include "spacing/interval.hpp"
#include "spacing/kernels.hpp"
#include "spacing/quadrature.hpp"
#include "spacing/table.hpp"

#include <functional>
#include <string>
#include <vector>

namespace spacing {

inline constexpr int kMaxGapIndex = 30;

struct GapProfile {
    int n = 0;
    double value = 0.0;
};

struct ParitySplit {
    double plus = 1.0;
    double minus = 1.0;
};

/// Nyström spectrum with node doubling from default_nodes() until two
/// successive determinants agree to tol. Returns the finer spectrum.
FredholmSpectrum converged_spectrum(const KernelSpec& kernel, const Interval& J, double tol = 1e-10);

/// prod_j (1 - xi mu_j), xi in [0, 1].
double generating_value(const FredholmSpectrum& spec, double xi);

/// Probability of exactly n points in the interval: the coefficient of z^n
/// in prod_j ((1 - mu_j) + mu_j z). For n <= kMaxGapIndex.
GapProfile gap_n(const FredholmSpectrum& spec, int n);

/// gap_n for every n in [0, n_max].
std::vector<double> gap_profile(const FredholmSpectrum& spec, int n_max);

/// D+ and D- on J = (-s, s) from the SineEven and SineOdd spectra.
/// n_nodes = 0 selects the converged node count.
ParitySplit parity_split(const Interval& J, int n_nodes = 0);

/// D+(s), D-(s) from an E2 profile on (-s, s):
/// log D+- = (1/2) log E2 -+ (1/2) int_0^s sqrt(-(log E2)'') dx.
/// The second derivative uses 5-point stencils on a grid of step <= h and the
/// integral composite Simpson.
ParitySplit gaudin_split(const std::function<double(double)>& e2_profile, double s, double h = 5e-3);

/// E2(0; (-s, s)) from the sine-kernel spectrum.
double e2_bulk_det(double s);

/// E1(0; (-s, s)) = D+.
double e1_bulk_det(double s);

/// E4(0; (-s/2, s/2)) = (1/2)(prod (1 - lambda_{2l}) + prod (1 - lambda_{2l+1}))
/// with lambda the descending sine spectrum on (-s, s).
double e4_bulk_det(double s);

/// E1(k; (-s, s)) for k = 0..n_max, assembled from the parity gap profiles
/// E+-(k) by E1(2k) + E1(2k-1) = E+(k) and E1(2k-1) + E1(2k-2) = E-(k-1).
std::vector<double> e1_gap_profile(double s, int n_max);

/// E2(k; (-s, s)) for k = 0..n_max.
std::vector<double> e2_gap_profile(double s, int n_max);

/// Generating value of the SpectrumSingularity(a) kernel on (-s, s).
double enn_det(double s, double a, double xi = 1.0);

/// det [SineBulk(x_i, x_j)].
double rho_k_bulk(const std::vector<double>& points);

/// 5-point second difference of uniformly sampled values (one-sided at the ends).
std::vector<double> second_difference(const std::vector<double>& values, double h);

struct SpacingColumn {
    std::vector<double> values;
    int clipped = 0;
};

/// p(n; s) = d^2/ds^2 sum_{j<=n} (n - j + 1) E(j; s) from columns
/// prefix + "0" ... prefix + n. Requires a uniform grid with step <= 5e-3.
SpacingColumn spacing_from_gaps(const SpacingTable& table, int n, const std::string& prefix = "E");

}  // namespace spacing
