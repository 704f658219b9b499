#include "spacing/fredholm.hpp"

#include "spacing/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spacing {

namespace {

constexpr double kNegligibleEigenvalue = 1e-16;
constexpr int kMaxNodes = 3200;

double determinant(const FredholmSpectrum& spec) { return generating_value(spec, 1.0); }

Interval require_symmetric(const Interval& J) {
    if (std::abs(J.lo() + J.hi()) > 1e-14 * std::max(1.0, J.hi())) {
        throw ArgumentError("parity split requires an interval symmetric about 0");
    }
    return J;
}

}  // namespace

FredholmSpectrum converged_spectrum(const KernelSpec& kernel, const Interval& J, double tol) {
    int n = default_nodes(kernel, J);
    FredholmSpectrum coarse = nystrom_spectrum(kernel, J, n);
    if (J.degenerate()) return coarse;
    while (2 * n <= kMaxNodes) {
        n *= 2;
        FredholmSpectrum fine = nystrom_spectrum(kernel, J, n);
        if (std::abs(determinant(fine) - determinant(coarse)) <= tol) return fine;
        coarse = std::move(fine);
    }
    std::ostringstream os;
    os << "Nyström determinant of " << kernel.name() << " on (" << J.lo() << ", " << J.hi()
       << ") did not converge with " << kMaxNodes << " nodes";
    throw NumericError(os.str());
}

double generating_value(const FredholmSpectrum& spec, double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw ArgumentError("generating_value: xi must lie in [0, 1]");
    double value = 1.0;
    for (double mu : spec.eigenvalues) {
        if (mu < kNegligibleEigenvalue) break;
        value *= 1.0 - xi * mu;
    }
    return value;
}

std::vector<double> gap_profile(const FredholmSpectrum& spec, int n_max) {
    if (n_max < 0) throw ArgumentError("gap_profile: n must be non-negative");
    if (n_max > kMaxGapIndex) {
        throw UnsupportedError("gap_profile: n = " + std::to_string(n_max) + " exceeds the stability bound " +
                               std::to_string(kMaxGapIndex));
    }
    // Coefficients of prod_j ((1 - mu_j) + mu_j z); every update mixes
    // non-negative terms, and mu_j ~ 1 simply shifts mass to higher powers.
    std::vector<double> c(n_max + 1, 0.0);
    c[0] = 1.0;
    for (double mu : spec.eigenvalues) {
        if (mu < kNegligibleEigenvalue) break;
        const double stay = 1.0 - mu;
        for (int k = n_max; k >= 1; --k) c[k] = c[k] * stay + c[k - 1] * mu;
        c[0] *= stay;
    }
    return c;
}

GapProfile gap_n(const FredholmSpectrum& spec, int n) {
    return {n, gap_profile(spec, n).back()};
}

ParitySplit parity_split(const Interval& J, int n_nodes) {
    require_symmetric(J);
    if (J.degenerate()) return {1.0, 1.0};
    const auto even = n_nodes > 0 ? nystrom_spectrum(KernelSpec::sine_even(), J, n_nodes)
                                  : converged_spectrum(KernelSpec::sine_even(), J);
    const auto odd = n_nodes > 0 ? nystrom_spectrum(KernelSpec::sine_odd(), J, n_nodes)
                                 : converged_spectrum(KernelSpec::sine_odd(), J);
    return {determinant(even), determinant(odd)};
}

std::vector<double> second_difference(const std::vector<double>& f, double h) {
    const std::size_t m = f.size();
    if (m < 5) throw ArgumentError("second_difference: need at least 5 samples");
    const double scale = 1.0 / (12.0 * h * h);
    std::vector<double> d(m);
    for (std::size_t i = 2; i + 2 < m; ++i) {
        d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * scale;
    }
    auto forward = [&](std::size_t i) {
        return (35.0 * f[i] - 104.0 * f[i + 1] + 114.0 * f[i + 2] - 56.0 * f[i + 3] + 11.0 * f[i + 4]) * scale;
    };
    auto backward = [&](std::size_t i) {
        return (35.0 * f[i] - 104.0 * f[i - 1] + 114.0 * f[i - 2] - 56.0 * f[i - 3] + 11.0 * f[i - 4]) * scale;
    };
    // Shifted one-sided stencils keep fourth-order accuracy next to the ends.
    d[0] = forward(0);
    d[1] = (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) * scale;
    d[m - 1] = backward(m - 1);
    d[m - 2] = (11.0 * f[m - 1] - 20.0 * f[m - 2] + 6.0 * f[m - 3] + 4.0 * f[m - 4] - f[m - 5]) * scale;
    return d;
}

ParitySplit gaudin_split(const std::function<double(double)>& e2_profile, double s, double h) {
    if (!(s >= 0.0)) throw ArgumentError("gaudin_split: s must be non-negative");
    if (!(h > 0.0 && h <= 1e-2)) throw ArgumentError("gaudin_split: grid step must lie in (0, 1e-2]");
    if (s == 0.0) return {1.0, 1.0};
    int intervals = static_cast<int>(std::ceil(s / h));
    intervals = std::max(4, intervals + (intervals % 2));
    const double step = s / intervals;

    std::vector<double> log_e(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        const double e = e2_profile(step * i);
        if (!(e > 0.0)) throw NumericError("gaudin_split: E2 profile must be positive");
        log_e[i] = std::log(e);
    }
    const auto second = second_difference(log_e, step);

    std::vector<double> root(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        const double v = -second[i];
        if (v < -1e-9) {
            std::ostringstream os;
            os << "gaudin_split: -(log E2)'' = " << v << " at x = " << step * i << " is negative";
            throw NumericError(os.str());
        }
        root[i] = std::sqrt(std::max(v, 0.0));
    }
    double integral = root[0] + root[intervals];
    for (int i = 1; i < intervals; ++i) integral += (i % 2 == 1 ? 4.0 : 2.0) * root[i];
    integral *= step / 3.0;

    const double half_log = 0.5 * log_e[intervals];
    return {std::exp(half_log - 0.5 * integral), std::exp(half_log + 0.5 * integral)};
}

double e2_bulk_det(double s) {
    if (!(s >= 0.0)) throw ArgumentError("s must be non-negative");
    return determinant(converged_spectrum(KernelSpec::sine_bulk(), Interval::symmetric(s)));
}

double e1_bulk_det(double s) {
    if (!(s >= 0.0)) throw ArgumentError("s must be non-negative");
    return parity_split(Interval::symmetric(s)).plus;
}

double e4_bulk_det(double s) {
    if (!(s >= 0.0)) throw ArgumentError("s must be non-negative");
    const auto spec = converged_spectrum(KernelSpec::sine_bulk(), Interval::symmetric(s));
    double even = 1.0;
    double odd = 1.0;
    for (std::size_t l = 0; l < spec.eigenvalues.size(); ++l) {
        const double lambda = spec.eigenvalues[l];
        if (lambda < kNegligibleEigenvalue) break;
        (l % 2 == 0 ? even : odd) *= 1.0 - lambda;
    }
    return 0.5 * (even + odd);
}

std::vector<double> e1_gap_profile(double s, int n_max) {
    if (!(s >= 0.0)) throw ArgumentError("s must be non-negative");
    if (n_max < 0 || n_max > kMaxGapIndex) throw UnsupportedError("e1_gap_profile: n out of range");
    const Interval J = Interval::symmetric(s);
    const int half = n_max / 2 + 1;
    const auto plus = gap_profile(converged_spectrum(KernelSpec::sine_even(), J), half);
    const auto minus = gap_profile(converged_spectrum(KernelSpec::sine_odd(), J), half);
    std::vector<double> e(n_max + 1);
    e[0] = plus[0];
    for (int k = 1; k <= n_max; ++k) {
        if (k % 2 == 1) {
            e[k] = minus[(k - 1) / 2] - e[k - 1];
        } else {
            e[k] = plus[k / 2] - e[k - 1];
        }
    }
    return e;
}

std::vector<double> e2_gap_profile(double s, int n_max) {
    if (!(s >= 0.0)) throw ArgumentError("s must be non-negative");
    return gap_profile(converged_spectrum(KernelSpec::sine_bulk(), Interval::symmetric(s)), n_max);
}

double enn_det(double s, double a, double xi) {
    if (!(s >= 0.0)) throw ArgumentError("s must be non-negative");
    return generating_value(converged_spectrum(KernelSpec::spectrum_singularity(a), Interval::symmetric(s)),
                            xi);
}

double rho_k_bulk(const std::vector<double>& points) {
    const auto k = static_cast<Eigen::Index>(points.size());
    if (k < 1) throw ArgumentError("rho_k_bulk: need at least one point");
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (std::abs(points[i] - points[j]) < 1e-12) {
                throw ArgumentError("rho_k_bulk: repeated point");
            }
        }
    }
    Eigen::MatrixXd m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) m(i, j) = sinc_pi(points[i] - points[j]);
    }
    return m.partialPivLu().determinant();
}

SpacingColumn spacing_from_gaps(const SpacingTable& table, int n, const std::string& prefix) {
    if (n < 0) throw ArgumentError("spacing_from_gaps: n must be non-negative");
    const double h = table.uniform_step();
    if (h <= 0.0) throw ArgumentError("spacing_from_gaps: grid must be uniform");
    if (h > 5e-3 * (1.0 + 1e-9)) throw ArgumentError("spacing_from_gaps: grid step must not exceed 5e-3");
    std::vector<double> weighted(table.size(), 0.0);
    for (int j = 0; j <= n; ++j) {
        const auto& col = table.column(prefix + std::to_string(j));
        for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] += (n - j + 1) * col[i];
    }
    SpacingColumn out{second_difference(weighted, h), 0};
    for (double& p : out.values) {
        if (p < 0.0) {
            p = 0.0;
            ++out.clipped;
        }
    }
    return out;
}

}  // namespace spacing
