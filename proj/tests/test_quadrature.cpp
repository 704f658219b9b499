#include "spacing/error.hpp"
#include "spacing/fredholm.hpp"
#include "spacing/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace spacing;

TEST_SUITE("quadrature") {

TEST_CASE("one- and two-point rules") {
    const auto r1 = gauss_legendre(1, Interval(-1, 1));
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const auto r2 = gauss_legendre(2, Interval(-1, 1));
    CHECK(std::abs(r2.nodes[0] + 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(r2.nodes[1] - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(r2.weights[0] - 1.0) < 1e-15);
    CHECK(std::abs(r2.weights[1] - 1.0) < 1e-15);
}

TEST_CASE("x^5 on (0,1) with 20 points") {
    const auto r = gauss_legendre(20, Interval(0, 1));
    double sum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], 5);
    CHECK(std::abs(sum - 1.0 / 6.0) < 1e-14);
}

TEST_CASE("nodes and weights agree with an independent tabulation") {
    const auto r = gauss_legendre(20, Interval(-1, 1));
    const auto& abs = boost::math::quadrature::gauss<double, 20>::abscissa();
    const auto& w = boost::math::quadrature::gauss<double, 20>::weights();
    // The reference stores the non-negative half of the symmetric rule.
    for (std::size_t k = 0; k < abs.size(); ++k) {
        const double x = abs[k];
        const std::size_t hi = 10 + k;
        const std::size_t lo = 9 - k;
        CHECK(std::abs(r.nodes[hi] - x) < 1e-15);
        CHECK(std::abs(r.nodes[lo] + x) < 1e-15);
        CHECK(std::abs(r.weights[hi] - w[k]) < 1e-14);
        CHECK(std::abs(r.weights[lo] - w[k]) < 1e-14);
    }
}

TEST_CASE("rule invariants") {
    for (int n : {1, 2, 5, 17, 64, 200}) {
        const Interval J(-0.3, 2.2);
        const auto r = gauss_legendre(n, J);
        REQUIRE(static_cast<int>(r.nodes.size()) == n);
        CHECK(r.order == n);
        for (int i = 0; i < n; ++i) {
            CHECK(r.weights[i] > 0.0);
            CHECK(J.contains(r.nodes[i]));
            if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
        }
        const double total = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
        CHECK(std::abs(total - J.length()) <= 1e-13 * J.length());
    }
}

TEST_CASE("exact for random polynomials of degree 2n-1") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int n : {3, 7, 15, 40}) {
        for (int trial = 0; trial < 5; ++trial) {
            const int deg = 2 * n - 1;
            std::vector<double> c(deg + 1);
            for (auto& v : c) v = coef(gen);
            const double a = -0.5;
            const double b = 1.0;
            double exact = 0.0;
            double scale = 0.0;
            for (int k = 0; k <= deg; ++k) {
                const double term = c[k] * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
                exact += term;
                scale += std::abs(term);
            }
            const auto r = gauss_legendre(n, Interval(a, b));
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                double p = 0.0;
                for (int k = deg; k >= 0; --k) p = p * r.nodes[i] + c[k];
                sum += r.weights[i] * p;
            }
            CHECK(std::abs(sum - exact) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("square-root graded rule integrates sqrt(x) exactly") {
    const auto r = sqrt_graded_legendre(6, Interval(0, 4));
    double sum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::sqrt(r.nodes[i]);
    CHECK(std::abs(sum - 16.0 / 3.0) < 1e-13);
}

TEST_CASE("invalid rules are rejected") {
    CHECK_THROWS_AS(gauss_legendre(0, Interval(0, 1)), ArgumentError);
    CHECK_THROWS_AS(gauss_legendre(5, Interval(1, 1)), ArgumentError);
    CHECK_THROWS_AS(Interval(1, 0), ArgumentError);
    CHECK_THROWS_AS(sqrt_graded_legendre(5, Interval(-1, 1)), ArgumentError);
}

TEST_CASE("empty interval gives a zero spectrum") {
    const auto spec = nystrom_spectrum(KernelSpec::sine_bulk(), Interval(0.5, 0.5), 20);
    for (double mu : spec.eigenvalues) CHECK(mu == 0.0);
}

TEST_CASE("largest eigenvalue approaches the trace for short intervals") {
    const double s = 1e-3;
    const auto spec = nystrom_spectrum(KernelSpec::sine_bulk(), Interval::symmetric(s), 20);
    CHECK(std::abs(spec.eigenvalues[0] - 2.0 * s) / (2.0 * s) < 1e-5);
}

TEST_CASE("trace identity on (-1,1)") {
    const auto spec = nystrom_spectrum(KernelSpec::sine_bulk(), Interval(-1, 1), 100);
    const double sum = std::accumulate(spec.eigenvalues.begin(), spec.eigenvalues.end(), 0.0);
    CHECK(std::abs(sum - 2.0) < 1e-10);
    CHECK(std::abs(sum - spec.trace_estimate) < 1e-12);
    for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i)
        CHECK(spec.eigenvalues[i] <= spec.eigenvalues[i - 1]);
}

TEST_CASE("trace estimate matches the eigenvalue sum for every kernel") {
    const std::vector<std::pair<KernelSpec, Interval>> cases = {
        {KernelSpec::sine_bulk(), Interval(-2, 2)},
        {KernelSpec::sine_even(), Interval(-2, 2)},
        {KernelSpec::sine_odd(), Interval(-2, 2)},
        {KernelSpec::hard_edge(-0.5), Interval(0, 20)},
        {KernelSpec::hard_edge(0.5), Interval(0, 20)},
        {KernelSpec::spectrum_singularity(0.0), Interval(-2, 2)},
        {KernelSpec::spectrum_singularity(1.0), Interval(-2, 2)}};
    for (const auto& [k, J] : cases) {
        const auto spec = nystrom_spectrum(k, J, 120);
        const double sum = std::accumulate(spec.eigenvalues.begin(), spec.eigenvalues.end(), 0.0);
        CHECK(std::abs(sum - spec.trace_estimate) < 1e-12 * std::max(1.0, spec.trace_estimate));
    }
}

TEST_CASE("spectra of all kernels lie in [0, 1] on intervals of length up to 10") {
    const std::vector<std::pair<KernelSpec, Interval>> cases = {
        {KernelSpec::sine_bulk(), Interval(-5, 5)},
        {KernelSpec::sine_even(), Interval(-5, 5)},
        {KernelSpec::sine_odd(), Interval(-5, 5)},
        {KernelSpec::hard_edge(-0.5), Interval(0, 10)},
        {KernelSpec::hard_edge(0.5), Interval(0, 10)},
        {KernelSpec::spectrum_singularity(0.0), Interval(-5, 5)},
        {KernelSpec::spectrum_singularity(1.0), Interval(-5, 5)}};
    for (const auto& [k, J] : cases) {
        const auto spec = nystrom_spectrum(k, J, default_nodes(k, J));
        for (double mu : spec.eigenvalues) {
            CHECK(mu >= 0.0);
            CHECK(mu <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("doubling the node count leaves the determinant unchanged") {
    for (double s : {0.5, 2.0, 4.0}) {
        const Interval J = Interval::symmetric(s);
        const auto k = KernelSpec::sine_bulk();
        const int n = default_nodes(k, J);
        const double a = generating_value(nystrom_spectrum(k, J, n), 1.0);
        const double b = generating_value(nystrom_spectrum(k, J, 2 * n), 1.0);
        CHECK(std::abs(a - b) < 1e-10);
    }
}

}
