#include "spacing/error.hpp"
#include "spacing/fredholm.hpp"
#include "spacing/painleve.hpp"
#include "spacing/quadrature.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

using namespace spacing;

namespace {

constexpr double kPi = std::numbers::pi;

double sinc_pi_ref(double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); }

FredholmSpectrum with_eigenvalues(std::vector<double> mu) {
    auto spec = converged_spectrum(KernelSpec::sine_bulk(), Interval(-0.1, 0.1));
    spec.eigenvalues = std::move(mu);
    return spec;
}

// Sum over k-subsets of the nodes, recursively.
void subsets(int start, int m, int k, std::vector<int>& chosen, const std::function<void(const std::vector<int>&)>& f) {
    if (static_cast<int>(chosen.size()) == k) {
        f(chosen);
        return;
    }
    for (int i = start; i < m; ++i) {
        chosen.push_back(i);
        subsets(i + 1, m, k, chosen, f);
        chosen.pop_back();
    }
}

double cofactor_det(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    double det = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<double>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<double> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            minor.push_back(row);
        }
        det += (j % 2 == 0 ? 1.0 : -1.0) * a[0][j] * cofactor_det(minor);
    }
    return det;
}

std::vector<double> grid(double lo, double hi, double h) {
    std::vector<double> g;
    for (int i = 0; lo + i * h <= hi + 1e-12; ++i) g.push_back(lo + i * h);
    return g;
}

}  // namespace

TEST_SUITE("fredholm") {

TEST_CASE("generating value basics") {
    const auto spec = converged_spectrum(KernelSpec::sine_bulk(), Interval(-1, 1));
    CHECK(generating_value(spec, 0.0) == 1.0);
    CHECK(generating_value(with_eigenvalues({0.5}), 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(generating_value(spec, 1.5), ArgumentError);
    CHECK_THROWS_AS(generating_value(spec, -0.1), ArgumentError);
}

TEST_CASE("determinant equals the correlation-function series") {
    // E = sum_k (-1)^k / k! int rho_k, with the k-fold integrals on a product
    // rule; only distinct nodes contribute, so each k-subset is counted once.
    const Interval J(-0.5, 0.5);
    const int m = 14;
    const auto rule = gauss_legendre(m, J);
    double series = 1.0;
    for (int k = 1; k <= 6; ++k) {
        double term = 0.0;
        std::vector<int> chosen;
        subsets(0, m, k, chosen, [&](const std::vector<int>& idx) {
            std::vector<double> pts;
            double w = 1.0;
            for (int i : idx) {
                pts.push_back(rule.nodes[i]);
                w *= rule.weights[i];
            }
            term += w * rho_k_bulk(pts);
        });
        series += (k % 2 == 0 ? 1.0 : -1.0) * term;
    }
    const double det = generating_value(converged_spectrum(KernelSpec::sine_bulk(), J), 1.0);
    CHECK(std::abs(series - det) < 1e-8);
}

TEST_CASE("gap probabilities") {
    const auto spec = converged_spectrum(KernelSpec::sine_bulk(), Interval(-1, 1));
    CHECK(gap_n(spec, 0).value == doctest::Approx(generating_value(spec, 1.0)).epsilon(1e-15));
    const auto profile = gap_profile(spec, kMaxGapIndex);
    CHECK(std::abs(std::accumulate(profile.begin(), profile.end(), 0.0) - 1.0) < 1e-10);
    for (double e : profile) CHECK(e >= -1e-15);

    // E(1) = -dE/dxi at xi = 1 (second-order one-sided difference).
    const double h = 1e-5;
    const double d = (3.0 * generating_value(spec, 1.0) - 4.0 * generating_value(spec, 1.0 - h) +
                      generating_value(spec, 1.0 - 2 * h)) /
                     (2.0 * h);
    CHECK(std::abs(profile[1] + d) < 1e-7);
    CHECK_THROWS_AS(gap_n(spec, kMaxGapIndex + 1), UnsupportedError);
}

TEST_CASE("elementary-symmetric gap probabilities match xi derivatives") {
    // E(xi) is a polynomial in xi; interpolate it at 13 points of [0, 1] and
    // read off (-1)^n/n! d^n/dxi^n at xi = 1.
    const auto spec = converged_spectrum(KernelSpec::sine_bulk(), Interval(-1, 1));
    const int deg = 12;
    Eigen::MatrixXd V(deg + 1, deg + 1);
    Eigen::VectorXd f(deg + 1);
    for (int i = 0; i <= deg; ++i) {
        const double t = static_cast<double>(i) / deg;  // t = 1 - xi
        for (int j = 0; j <= deg; ++j) V(i, j) = std::pow(t, j);
        f[i] = generating_value(spec, 1.0 - t);
    }
    const Eigen::VectorXd c = V.fullPivLu().solve(f);
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(gap_n(spec, n).value - c[n]) < 1e-6);
}

TEST_CASE("parity split") {
    const auto tiny = parity_split(Interval::symmetric(1e-9));
    CHECK(std::abs(tiny.plus - 1.0) < 1e-8);
    CHECK(std::abs(tiny.minus - 1.0) < 1e-8);
    const auto p = parity_split(Interval::symmetric(1.0));
    CHECK(std::abs(p.plus * p.minus - e2_bulk_det(1.0)) < 1e-10);
    CHECK_THROWS_AS(parity_split(Interval(-1.0, 0.5)), ArgumentError);
}

TEST_CASE("Gaudin's route reproduces the parity split") {
    for (double s : {0.5, 1.0}) {
        const auto p = parity_split(Interval::symmetric(s));
        const auto g = gaudin_split([](double x) { return e2_bulk_det(x); }, s);
        CHECK(std::abs(g.plus - p.plus) < 1e-6);
        CHECK(std::abs(g.minus - p.minus) < 1e-6);
    }
    const auto z = gaudin_split([](double x) { return e2_bulk_det(x); }, 0.0);
    CHECK(z.plus == doctest::Approx(1.0));
    CHECK(z.minus == doctest::Approx(1.0));
    // A profile that is not log-concave is inconsistent.
    CHECK_THROWS_AS(gaudin_split([](double x) { return std::exp(x * x); }, 0.5), NumericError);
}

TEST_CASE("D+ decreases on [0, 2]") {
    double prev = 2.0;
    for (double s : grid(0.0, 2.0, 0.1)) {
        const double d = e1_bulk_det(s);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("orthogonal and symplectic gap probabilities") {
    CHECK(e1_bulk_det(0.0) == 1.0);
    CHECK(e4_bulk_det(0.0) == 1.0);
    const double s = 0.8;
    const double e1 = e1_bulk_det(s);
    const double e2 = e2_bulk_det(s);
    CHECK(std::abs(e4_bulk_det(s) - 0.5 * (e1 + e2 / e1)) < 1e-10);
    CHECK(std::abs(e1_bulk_det(1.0) - e1_bulk(1.0)) < 1e-6);
}

TEST_CASE("orthogonal gap profile") {
    const auto e = e1_gap_profile(1.0, 6);
    CHECK(std::abs(e[0] - e1_bulk_det(1.0)) < 1e-14);
    double total = 0.0;
    for (double v : e) {
        CHECK(v >= -1e-12);
        total += v;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("k-point correlations") {
    CHECK(rho_k_bulk({0.4}) == doctest::Approx(1.0));
    for (double s : {0.1, 0.5, 1.3}) {
        const double sinc = sinc_pi_ref(s);
        CHECK(std::abs(rho_k_bulk({0.0, s}) - (1.0 - sinc * sinc)) < 1e-14);
    }
    const std::vector<double> pts = {0.0, 0.3, 0.9};
    std::vector<std::vector<double>> m(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = sinc_pi_ref(pts[i] - pts[j]);
    CHECK(std::abs(rho_k_bulk(pts) - cofactor_det(m)) < 1e-12);
    CHECK_THROWS_AS(rho_k_bulk({0.2, 0.2 + 1e-13}), ArgumentError);
    CHECK_THROWS_AS(rho_k_bulk({}), ArgumentError);
}

TEST_CASE("spacing densities from gap-probability columns") {
    const double h = 5e-3;
    SpacingTable t = SpacingTable::uniform(0.9, 1.1, h);
    std::vector<double> e0;
    std::vector<double> one;
    for (double s : t.s_grid()) {
        e0.push_back(e2_bulk_det(0.5 * s));
        one.push_back(1.0);
    }
    t.add_column("E0", e0);
    t.add_column("C0", one);
    const auto p = spacing_from_gaps(t, 0);
    const std::size_t mid = t.size() / 2;
    CHECK(std::abs(t.s_grid()[mid] - 1.0) < 1e-12);
    CHECK(std::abs(p.values[mid] - p2_direct(1.0)) < 1e-4);
    for (double v : spacing_from_gaps(t, 0, "C").values) CHECK(std::abs(v) < 1e-9);
    CHECK_THROWS_AS(spacing_from_gaps(t, 1), ArgumentError);

    SpacingTable coarse = SpacingTable::uniform(0.0, 1.0, 0.1);
    coarse.add_column("E0", std::vector<double>(coarse.size(), 1.0));
    CHECK_THROWS_AS(spacing_from_gaps(coarse, 0), ArgumentError);
}

TEST_CASE("one level in between needs more room than none") {
    const double h = 5e-3;
    SpacingTable t = SpacingTable::uniform(0.02, 0.3, h);
    std::vector<std::vector<double>> cols(2);
    for (double s : t.s_grid()) {
        const auto e = e2_gap_profile(0.5 * s, 1);
        cols[0].push_back(e[0]);
        cols[1].push_back(e[1]);
    }
    t.add_column("E0", cols[0]);
    t.add_column("E1", cols[1]);
    const auto p0 = spacing_from_gaps(t, 0);
    const auto p1 = spacing_from_gaps(t, 1);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t.s_grid()[i] <= 0.2) CHECK(p1.values[i] < p0.values[i]);
}

TEST_CASE("sum rule at sample points") {
    for (double s : {0.1, 0.7, 1.5, 2.0}) {
        const double h = 5e-3;
        // sum_{n<=8} p(n) = d^2/ds^2 sum_{j<=8} (9 - j)(10 - j)/2 E(j).
        auto weighted = [](double x) {
            const auto e = e2_gap_profile(0.5 * x, 8);
            double w = 0.0;
            for (int j = 0; j <= 8; ++j) w += 0.5 * (9 - j) * (10 - j) * e[j];
            return w;
        };
        const double sum = (-weighted(s - 2 * h) + 16 * weighted(s - h) - 30 * weighted(s) + 16 * weighted(s + h) -
               weighted(s + 2 * h)) /
              (12 * h * h);
        const double sinc = sinc_pi_ref(s);
        CHECK(std::abs(sum - (1.0 - sinc * sinc)) < 1e-5);
    }
}

TEST_CASE("normalization and mean of the unitary spacing density") {
    double norm = 0.0;
    double mean = 0.0;
    for (int panel = 0; panel < 45; ++panel) {
        const auto r = gauss_legendre(10, Interval(0.1 * panel, 0.1 * (panel + 1)));
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double p = p2_direct(r.nodes[i]);
            norm += r.weights[i] * p;
            mean += r.weights[i] * r.nodes[i] * p;
        }
    }
    CHECK(std::abs(norm - 1.0) < 1e-7);
    CHECK(std::abs(mean - 1.0) < 1e-7);
}

TEST_CASE("monotonicity in s and xi") {
    double prev = 2.0;
    for (double s : grid(0.0, 3.0, 0.1)) {
        const double e = e2_bulk_det(s);
        CHECK(e < prev);
        prev = e;
    }
    const auto spec = converged_spectrum(KernelSpec::sine_bulk(), Interval(-1, 1));
    double prev_xi = 2.0;
    for (double xi : grid(0.0, 1.0, 0.05)) {
        const double e = generating_value(spec, xi);
        CHECK(e < prev_xi);
        prev_xi = e;
    }
}

TEST_CASE("converged spectra stay stable under refinement") {
    const auto k = KernelSpec::spectrum_singularity(1.0);
    const Interval J = Interval::symmetric(1.5);
    const auto spec = converged_spectrum(k, J);
    const double fine = generating_value(nystrom_spectrum(k, J, 2 * spec.nodes_used), 1.0);
    CHECK(std::abs(generating_value(spec, 1.0) - fine) < 1e-10);
}

}
