#pragma once

#include "spacing/random.hpp"
#include "spacing/stats.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace spacing {

struct SpectrumSample {
    int n = 0;
    std::vector<double> raw;
    std::vector<double> unfolded;
    /// Eigenvalues outside the semicircle support, clipped for the density lookup.
    int clipped = 0;
};

/// GOE spectrum of rank n from the three-term recurrence: eigenvalues of the
/// tridiagonal matrix with diagonal a_k ~ N(0,1) and off-diagonal b_k,
/// b_k^2 ~ Gamma(k/2, 1).
SpectrumSample sample_goe(int n, std::uint64_t rng_seed);
SpectrumSample sample_goe(int n, Rng& rng);

/// (sqrt(2N)/pi) sqrt(1 - x^2/2N), zero outside |x| < sqrt(2N).
double semicircle_density(double x, int n);

/// Rescales each raw spacing by the semicircle density at its midpoint.
SpectrumSample unfold(SpectrumSample sample);

/// Same with an arbitrary positive density on (-half_width, half_width).
SpectrumSample unfold(SpectrumSample sample, const std::function<double(double)>& density,
                      double half_width);

/// Unfolded gaps around the middle index: order 0 gives the two nearest
/// gaps, order 1 the gap spanning one level.
std::vector<double> central_spacing(const SpectrumSample& sample, int order);

struct EnsembleSpacings {
    std::vector<double> spacings;
    long clipped = 0;
};

/// Replica i draws from Rng(seed, i); output order is by replica, so the
/// result does not depend on `threads`.
EnsembleSpacings ensemble_spacings(int n, int reps, std::uint64_t seed, int order, unsigned threads);

}  // namespace spacing
