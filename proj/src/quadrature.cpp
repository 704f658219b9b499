#include "spacing/quadrature.hpp"

#include "spacing/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace spacing {

namespace {

constexpr double kNegativeEigenvalueLimit = 1e-10;
constexpr double kUpperEigenvalueLimit = 1.0 + 1e-10;

struct ReferenceRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0;
    double p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

ReferenceRule compute_reference(int n) {
    ReferenceRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi's asymptotic guess for the i-th largest root.
        const double theta = std::numbers::pi * (4.0 * i + 3.0) / (4.0 * n + 2.0);
        double x = (1.0 - (n - 1.0) / (8.0 * n * n * n)) * std::cos(theta);
        double p = 0.0;
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

const ReferenceRule& reference_rule(int n) {
    static std::mutex mutex;
    static std::map<int, ReferenceRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_reference(n)).first;
    return it->second;
}

}  // namespace

QuadratureRule gauss_legendre(int n, const Interval& J) {
    if (n < 1) throw ArgumentError("gauss_legendre: n must be at least 1");
    if (J.degenerate()) throw ArgumentError("gauss_legendre: degenerate interval");
    const ReferenceRule& ref = reference_rule(n);
    const double half = 0.5 * J.length();
    const double mid = J.midpoint();
    QuadratureRule rule;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * ref.x[i];
        rule.weights[i] = half * ref.w[i];
    }
    return rule;
}

QuadratureRule sqrt_graded_legendre(int n, const Interval& J) {
    if (J.lo() < 0.0) throw ArgumentError("sqrt_graded_legendre: interval must lie in [0, inf)");
    QuadratureRule rule = gauss_legendre(n, Interval(std::sqrt(J.lo()), std::sqrt(J.hi())));
    for (int i = 0; i < n; ++i) {
        const double u = rule.nodes[i];
        rule.nodes[i] = u * u;
        rule.weights[i] *= 2.0 * u;
    }
    return rule;
}

int default_nodes(const KernelSpec& kernel, const Interval& J) {
    // The length measured in oscillation periods of the kernel.
    double scale = J.length();
    if (kernel.positive_axis()) scale = std::sqrt(std::max(J.hi(), 0.0)) / std::numbers::pi;
    if (scale <= 10.0) return 100;
    return 10 * static_cast<int>(std::ceil(scale));
}

FredholmSpectrum nystrom_spectrum(const KernelSpec& kernel, const Interval& J, int n) {
    if (n < 1) throw ArgumentError("nystrom_spectrum: n must be at least 1");
    FredholmSpectrum spec{{}, kernel, J, n, 0.0, 0.0};
    if (J.degenerate()) {
        spec.eigenvalues.assign(n, 0.0);
        return spec;
    }
    const QuadratureRule rule =
        kernel.positive_axis() ? sqrt_graded_legendre(n, J) : gauss_legendre(n, J);

    Eigen::MatrixXd m(n, n);
    std::vector<double> root_w(n);
    for (int i = 0; i < n; ++i) root_w[i] = std::sqrt(rule.weights[i]);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double k = evaluate(kernel, rule.nodes[i], rule.nodes[j]);
            if (!std::isfinite(k)) {
                std::ostringstream os;
                os.precision(17);
                os << "non-finite kernel value " << kernel.name() << " at (x, y) = ("
                   << rule.nodes[i] << ", " << rule.nodes[j] << ")";
                throw NumericError(os.str());
            }
            m(i, j) = m(j, i) = root_w[i] * k * root_w[j];
        }
        spec.trace_estimate += m(i, i);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("nystrom_spectrum: symmetric eigensolver did not converge");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    spec.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) {
        double mu = ev[n - 1 - i];
        if (mu < 0.0) {
            if (mu < -kNegativeEigenvalueLimit) {
                std::ostringstream os;
                os << "nystrom_spectrum: eigenvalue " << mu << " of " << kernel.name()
                   << " is negative beyond roundoff";
                throw NumericError(os.str());
            }
            spec.clamped_epsilon = std::max(spec.clamped_epsilon, -mu);
            mu = 0.0;
        }
        if (mu > kUpperEigenvalueLimit) {
            std::ostringstream os;
            os << "nystrom_spectrum: eigenvalue " << mu << " of " << kernel.name() << " exceeds 1";
            throw NumericError(os.str());
        }
        spec.eigenvalues[i] = mu;
    }
    return spec;
}

}  // namespace spacing
