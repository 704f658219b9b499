#include "spacing/montecarlo.hpp"

#include "spacing/error.hpp"
#include "spacing/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spacing {

SpectrumSample sample_goe(int n, Rng& rng) {
    if (n < 1) throw ArgumentError("sample_goe: n must be at least 1");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag[k] = rng.normal();
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(rng.gamma(0.5 * k));
    SpectrumSample s;
    s.n = n;
    if (n == 1) {
        s.raw = {diag[0]};
        return s;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("sample_goe: tridiagonal QR did not converge within " +
                           std::to_string(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations) +
                           " sweeps per eigenvalue (n = " + std::to_string(n) + ")");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    s.raw.assign(ev.data(), ev.data() + n);
    std::sort(s.raw.begin(), s.raw.end());
    return s;
}

SpectrumSample sample_goe(int n, std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    return sample_goe(n, rng);
}

double semicircle_density(double x, int n) {
    const double r2 = 2.0 * n;
    const double q = 1.0 - x * x / r2;
    if (q <= 0.0) return 0.0;
    return std::sqrt(r2) / std::numbers::pi * std::sqrt(q);
}

SpectrumSample unfold(SpectrumSample sample, const std::function<double(double)>& density, double half_width) {
    const int n = static_cast<int>(sample.raw.size());
    if (n < 2) throw ArgumentError("unfold: need at least two eigenvalues");
    sample.clipped = 0;
    for (double x : sample.raw)
        if (std::abs(x) >= half_width) ++sample.clipped;
    // Keep the rescaling factor strictly positive near the clipped edge.
    const double clip = std::isfinite(half_width) ? half_width * (1.0 - 1e-6) : std::numeric_limits<double>::max();
    auto rho = [&](double x) {
        const double v = density(std::clamp(x, -clip, clip));
        if (!(v > 0.0)) throw NumericError("unfold: density not positive at x = " + std::to_string(x));
        return v;
    };
    sample.unfolded.resize(n);
    sample.unfolded[0] = sample.raw[0] * rho(sample.raw[0]);
    for (int i = 1; i < n; ++i) {
        const double gap = sample.raw[i] - sample.raw[i - 1];
        const double mid = 0.5 * (sample.raw[i] + sample.raw[i - 1]);
        sample.unfolded[i] = sample.unfolded[i - 1] + gap * rho(mid);
    }
    return sample;
}

SpectrumSample unfold(SpectrumSample sample) {
    const int n = sample.n > 0 ? sample.n : static_cast<int>(sample.raw.size());
    const double half_width = std::sqrt(2.0 * n);
    return unfold(std::move(sample), [n](double x) { return semicircle_density(x, n); }, half_width);
}

std::vector<double> central_spacing(const SpectrumSample& sample, int order) {
    const int n = static_cast<int>(sample.unfolded.size());
    if (order < 0 || order > 1) throw ArgumentError("central_spacing: order must be 0 or 1");
    if (n % 2 == 0 || n < 2 * order + 3)
        throw ArgumentError("central_spacing: rank must be odd and at least " + std::to_string(2 * order + 3));
    const int m = n / 2;  // 0-based middle index
    const auto& u = sample.unfolded;
    if (order == 0) return {u[m] - u[m - 1], u[m + 1] - u[m]};
    return {u[m + 1] - u[m - 1]};
}

EnsembleSpacings ensemble_spacings(int n, int reps, std::uint64_t seed, int order, unsigned threads) {
    if (reps < 1) throw ArgumentError("ensemble_spacings: reps must be positive");
    const int per = order == 0 ? 2 : 1;
    std::vector<double> out(static_cast<std::size_t>(reps) * per);
    std::vector<int> clipped(reps, 0);
    parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t i) {
        Rng rng(seed, i);
        const SpectrumSample s = unfold(sample_goe(n, rng));
        const auto gaps = central_spacing(s, order);
        for (int j = 0; j < per; ++j) out[i * per + j] = gaps[j];
        clipped[i] = s.clipped;
    });
    EnsembleSpacings r;
    r.spacings = std::move(out);
    for (int c : clipped) r.clipped += c;
    return r;
}

}  // namespace spacing
