#include "spacing/error.hpp"
#include "spacing/parallel.hpp"
#include "spacing/random.hpp"
#include "spacing/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

using namespace spacing;

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

template <class F>
Moments moments(int n, F draw) {
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    return {m, s2 / n - m * m};
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("generator streams") {
    Rng a(42, 0);
    Rng b(42, 0);
    Rng c(42, 1);
    Rng d(43, 0);
    int same_c = 0;
    int same_d = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        same_c += x == c.next_u64();
        same_d += x == d.next_u64();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
    CHECK(a.counter() == 100);
    CHECK(mix64(1) != mix64(2));
}

TEST_CASE("uniform, normal and gamma variates") {
    Rng rng(7);
    const int n = 200000;
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
    const auto u = moments(n, [&] { return rng.uniform(); });
    CHECK(std::abs(u.mean - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(u.var - 1.0 / 12) < 2e-3);
    const auto z = moments(n, [&] { return rng.normal(); });
    CHECK(std::abs(z.mean) < 5 / std::sqrt(double(n)));
    CHECK(std::abs(z.var - 1.0) < 5 * std::sqrt(2.0 / n));
    for (double shape : {0.5, 1.0, 1.5, 6.5}) {
        const auto g = moments(n, [&] { return rng.gamma(shape); });
        CHECK(std::abs(g.mean - shape) < 5 * std::sqrt(shape / n));
        CHECK(std::abs(g.var - shape) < 0.03 * shape + 5 * std::sqrt(6.0 * shape * shape / n));
    }
    CHECK_THROWS_AS(rng.gamma(0.0), ArgumentError);
}

TEST_CASE("gamma variates follow the gamma law") {
    // Kolmogorov-Smirnov against the regularized incomplete gamma function,
    // Gamma(k/2, 1) for k = 1..4; 1.95/sqrt(n) is the 0.1% critical value.
    Rng rng(11);
    const int n = 20000;
    for (int k = 1; k <= 4; ++k) {
        const double shape = 0.5 * k;
        std::vector<double> x(n);
        for (double& v : x) v = rng.gamma(shape);
        const double d = ks_distance(x, [&](double t) { return t <= 0 ? 0.0 : boost::math::gamma_p(shape, t); });
        CHECK(d < 1.95 / std::sqrt(double(n)));
    }
}

TEST_CASE("histogram construction") {
    const std::vector<double> data = {-0.1, 0.0, 0.05, 0.1, 0.15, 0.35, 0.99999, 1.0, 2.0};
    const auto h = build_histogram(data, 0.1, Interval(0.0, 1.0));
    REQUIRE(h.bins() == 10);
    CHECK(h.counts[0] == 2);
    CHECK(h.counts[1] == 2);
    CHECK(h.counts[3] == 1);
    CHECK(h.counts[9] == 1);
    CHECK(h.below == 1);
    CHECK(h.above == 2);
    CHECK(h.total() == data.size());
    double mass = 0.0;
    for (std::size_t i = 0; i < h.bins(); ++i) mass += h.density[i] * h.width(i);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h.center(0) == doctest::Approx(0.05));
    CHECK_THROWS_AS(build_histogram({}, 0.1, Interval(0.0, 1.0)), ArgumentError);
    CHECK_THROWS_AS(build_histogram(data, 0.0, Interval(0.0, 1.0)), ArgumentError);
    CHECK_THROWS_AS(histogram_from_counts({0.0, 1.0}, {1, 2}, 0, 0), ArgumentError);
    CHECK_THROWS_AS(histogram_from_counts({1.0, 0.0}, {1}, 0, 0), ArgumentError);
}

TEST_CASE("chi-square against exact expectations") {
    // Counts equal to the expectations give a zero statistic.
    const auto h = histogram_from_counts({0.0, 0.25, 0.5, 0.75, 1.0}, {25, 25, 25, 25}, 0, 0);
    const auto exact = chi_square_gof(h, [](double) { return 1.0; });
    CHECK(exact.statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(exact.p_value == doctest::Approx(1.0));

    const auto off = histogram_from_counts({0.0, 0.25, 0.5, 0.75, 1.0}, {30, 20, 25, 25}, 0, 0);
    const auto fit = chi_square_gof(off, [](double) { return 1.0; });
    // Five cells including the empty overflow cell (expected 0) merged into the last.
    CHECK(fit.statistic == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.cells == 4);
    CHECK(fit.dof == 3);
    const boost::math::chi_squared_distribution<double> law(3);
    CHECK(fit.p_value == doctest::Approx(boost::math::cdf(boost::math::complement(law, 2.0))).epsilon(1e-12));
}

TEST_CASE("chi-square merges sparse cells") {
    const auto h = histogram_from_counts({0.0, 1.0, 2.0, 3.0}, {3, 3, 4}, 0, 0);
    // Expected counts 10/3 each: the three cells merge into one, leaving no
    // degrees of freedom.
    CHECK_THROWS_AS(chi_square_gof(h, [](double) { return 1.0 / 3.0; }), NumericError);
    const auto wider = histogram_from_counts({0.0, 1.0, 2.0, 3.0, 4.0}, {3, 3, 4, 6}, 0, 0);
    const auto fit = chi_square_gof(wider, [](double) { return 0.25; });
    CHECK(fit.cells == 2);
    CHECK(fit.statistic == doctest::Approx((6.0 - 8.0) * (6.0 - 8.0) / 8.0 * 2.0));
}

TEST_CASE("chi-square p-values are uniform under the null") {
    int small = 0;
    const int trials = 400;
    for (int r = 0; r < trials; ++r) {
        Rng rng(99, r);
        std::vector<double> x(1000);
        for (double& v : x) v = -std::log(rng.uniform());
        const auto fit = chi_square_gof(build_histogram(x, 0.2, Interval(0.0, 4.0)), [](double t) { return std::exp(-t); });
        small += fit.p_value < 0.05;
    }
    const double rate = static_cast<double>(small) / trials;
    CHECK(rate > 0.02);
    CHECK(rate < 0.09);
}

TEST_CASE("homogeneity") {
    Rng rng(5);
    std::vector<double> a(5000);
    std::vector<double> b(5000);
    std::vector<double> c(5000);
    for (double& v : a) v = rng.normal();
    for (double& v : b) v = rng.normal();
    for (double& v : c) v = rng.normal() * 1.2;
    const Interval range(-4.0, 4.0);
    const auto ha = build_histogram(a, 0.25, range);
    const auto same = chi_square_homogeneity(ha, ha);
    CHECK(same.statistic == doctest::Approx(0.0));
    CHECK(chi_square_homogeneity(ha, build_histogram(b, 0.25, range)).p_value > 1e-3);
    CHECK(chi_square_homogeneity(ha, build_histogram(c, 0.25, range)).p_value < 1e-6);
    CHECK_THROWS_AS(chi_square_homogeneity(ha, build_histogram(b, 0.5, range)), ArgumentError);
}

TEST_CASE("Kolmogorov-Smirnov distances") {
    auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_distance({0.5}, uniform_cdf) == doctest::Approx(0.5));
    CHECK(ks_distance({0.25, 0.75}, uniform_cdf) == doctest::Approx(0.25));
    const auto h = histogram_from_counts({0.0, 0.5, 1.0}, {3, 1}, 0, 0);
    // Edge CDFs 0, 0.75, 1 against 0, 0.5, 1.
    CHECK(ks_histogram(h, uniform_cdf) == doctest::Approx(0.25));
    Rng rng(3);
    std::vector<double> x(4000);
    for (double& v : x) v = rng.uniform();
    CHECK(ks_distance(x, uniform_cdf) < 1.63 / std::sqrt(4000.0));
    CHECK_THROWS_AS(ks_distance({}, uniform_cdf), ArgumentError);
}

TEST_CASE("parallel loop") {
    for (unsigned threads : {1u, 3u, 8u}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
    CHECK_THROWS_AS(parallel_for(50, 4,
                                 [](std::size_t i) {
                                     if (i == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("thread count resolution") {
    ::unsetenv("SPACING_LAB_THREADS");
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
    ::setenv("SPACING_LAB_THREADS", "2", 1);
    CHECK(resolve_threads(5) == 2);
    ::setenv("SPACING_LAB_THREADS", "0", 1);
    CHECK(resolve_threads(5) == 5);
    ::unsetenv("SPACING_LAB_THREADS");
}

}
