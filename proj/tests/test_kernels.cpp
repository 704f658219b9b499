#include "spacing/error.hpp"
#include "spacing/fredholm.hpp"
#include "spacing/kernels.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace spacing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("kernels") {

TEST_CASE("sine kernel values") {
    CHECK(evaluate(KernelSpec::sine_bulk(), 0.3, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(evaluate(KernelSpec::sine_bulk(), 0.0, 0.5) - 2.0 / kPi) < 1e-15);
}

TEST_CASE("symmetry of every kernel") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    const std::vector<KernelSpec> kernels = {KernelSpec::sine_bulk(),          KernelSpec::sine_even(),
                                             KernelSpec::sine_odd(),           KernelSpec::hard_edge(-0.5),
                                             KernelSpec::hard_edge(0.5),       KernelSpec::spectrum_singularity(0.0),
                                             KernelSpec::spectrum_singularity(1.0)};
    for (int i = 0; i < 200; ++i) {
        const double x = u(gen);
        const double y = u(gen);
        for (const auto& k : kernels) CHECK(std::abs(evaluate(k, x, y) - evaluate(k, y, x)) < 1e-14);
    }
}

TEST_CASE("even and odd parts add up to the sine kernel") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(gen);
        const double y = u(gen);
        const double sum = evaluate(KernelSpec::sine_even(), x, y) + evaluate(KernelSpec::sine_odd(), x, y);
        CHECK(std::abs(sum - evaluate(KernelSpec::sine_bulk(), x, y)) < 1e-14);
    }
}

TEST_CASE("hard edge at a = 1/2 and -1/2 maps onto the odd and even sine kernels") {
    // 2 sqrt(xy) K(x^2, y^2) = (2/pi) K_odd(x/pi, y/pi), and likewise for the even part.
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    for (int i = 0; i < 300; ++i) {
        const double x = u(gen);
        const double y = u(gen);
        const double odd = 2.0 * std::sqrt(x * y) * evaluate(KernelSpec::hard_edge(0.5), x * x, y * y);
        const double even = 2.0 * std::sqrt(x * y) * evaluate(KernelSpec::hard_edge(-0.5), x * x, y * y);
        CHECK(std::abs(odd - 2.0 / kPi * evaluate(KernelSpec::sine_odd(), x / kPi, y / kPi)) < 1e-12);
        CHECK(std::abs(even - 2.0 / kPi * evaluate(KernelSpec::sine_even(), x / kPi, y / kPi)) < 1e-12);
    }
}

TEST_CASE("spectrum singularity at a = 0 is the sine kernel") {
    std::mt19937_64 gen(10);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        const double x = u(gen);
        const double y = u(gen);
        CHECK(std::abs(evaluate(KernelSpec::spectrum_singularity(0.0), x, y) -
                       evaluate(KernelSpec::sine_bulk(), x, y)) < 1e-12);
    }
}

TEST_CASE("diagonal branches join continuously") {
    const std::vector<KernelSpec> kernels = {KernelSpec::sine_bulk(), KernelSpec::sine_even(), KernelSpec::sine_odd(),
                                             KernelSpec::spectrum_singularity(1.0), KernelSpec::hard_edge(-0.5),
                                             KernelSpec::hard_edge(0.5)};
    for (const auto& k : kernels) {
        for (double x : {0.3, 1.1, 2.7}) {
            // Offsets just below and just above the switch, in the variable
            // where the switch is applied (sqrt(x) for the hard edge).
            const double below = kDiagonalSwitch * (1.0 - 1e-6);
            const double above = kDiagonalSwitch * (1.0 + 1e-6);
            double inside = 0.0;
            double outside = 0.0;
            if (k.positive_axis()) {
                const double u = std::sqrt(x);
                inside = evaluate(k, x, (u + below) * (u + below));
                outside = evaluate(k, x, (u + above) * (u + above));
            } else {
                inside = evaluate(k, x, x + below);
                outside = evaluate(k, x, x + above);
            }
            CHECK(std::abs(inside - outside) < 1e-9);
        }
    }
}

TEST_CASE("half-integer Bessel functions") {
    CHECK(std::abs(bessel_half_integer(0.5, kPi)) < 1e-16);
    CHECK(std::abs(bessel_half_integer(-0.5, kPi / 2)) < 1e-16);
    for (double z : {1e-3, 0.1, 0.49, 0.51, 1.0, 3.0, 10.0, 40.0}) {
        for (double nu : {-0.5, 0.5, 1.5}) {
            const double ref = boost::math::cyl_bessel_j(nu, z);
            CHECK(std::abs(bessel_half_integer(nu, z) - ref) < 1e-14 * std::max(1.0, std::abs(ref)) + 1e-16);
        }
        for (double nu : {-0.5, 0.5}) {
            const double ref = boost::math::cyl_bessel_j_prime(nu, z);
            CHECK(std::abs(bessel_half_integer_derivative(nu, z) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("J_{3/2}(1) agrees with its power series") {
    // J_nu(z) = sum_m (-1)^m (z/2)^{2m+nu} / (m! Gamma(m+nu+1))
    double series = 0.0;
    for (int m = 0; m < 20; ++m)
        series += std::pow(-1.0, m) * std::pow(0.5, 2 * m + 1.5) / (std::tgamma(m + 1.0) * std::tgamma(m + 2.5));
    CHECK(std::abs(bessel_half_integer(1.5, 1.0) - series) < 1e-13);
    const double small = 0.3;
    double s2 = 0.0;
    for (int m = 0; m < 20; ++m)
        s2 += std::pow(-1.0, m) * std::pow(small / 2, 2 * m + 1.5) / (std::tgamma(m + 1.0) * std::tgamma(m + 2.5));
    CHECK(std::abs(bessel_half_integer(1.5, small) - s2) < 1e-16);
}

TEST_CASE("unsupported parameters") {
    CHECK_THROWS_AS(KernelSpec::hard_edge(0.0), UnsupportedError);
    CHECK_THROWS_AS(KernelSpec::hard_edge(1.5), UnsupportedError);
    CHECK_THROWS_AS(KernelSpec::spectrum_singularity(0.5), UnsupportedError);
    CHECK_THROWS_AS(KernelSpec::spectrum_singularity(2.0), UnsupportedError);
    CHECK_THROWS_AS(bessel_half_integer(2.5, 1.0), UnsupportedError);
    CHECK_THROWS_AS(evaluate(KernelSpec::hard_edge(0.5), -1.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(evaluate(KernelSpec::hard_edge(0.5), 0.0, 1.0), ArgumentError);
}

TEST_CASE("hard-edge diagonal") {
    // a = 1/2: K(t,t) ~ c t^{1/2}.
    const double slope = (std::log(hard_edge_diagonal(0.5, 1e-5)) - std::log(hard_edge_diagonal(0.5, 1e-6))) /
                         std::log(10.0);
    CHECK(std::abs(slope - 0.5) < 1e-3);
    for (double a : {-0.5, 0.5}) {
        for (double t : {1e-4, 0.3, 1.0, 7.0, 50.0}) {
            const double d = hard_edge_diagonal(a, t);
            const double near = evaluate(KernelSpec::hard_edge(a), t, t * (1.0 + 1e-9));
            CHECK(std::abs(d - near) <= 1e-6 * std::abs(d));
            CHECK(evaluate(KernelSpec::hard_edge(a), t, t) == doctest::Approx(d).epsilon(1e-14));
        }
    }
    // Under x = u^2 the a = -1/2 diagonal is the even sine diagonal at u/pi.
    const double expected = (1.0 + std::sin(2.0) / 2.0) / (2.0 * kPi);
    CHECK(hard_edge_diagonal(-0.5, 1.0) > 0.0);
    CHECK(std::abs(hard_edge_diagonal(-0.5, 1.0) - expected) < 1e-14);
    CHECK(std::abs(hard_edge_diagonal(-0.5, 1.0) - evaluate(KernelSpec::sine_even(), 1 / kPi, 1 / kPi) / kPi) < 1e-14);
}

TEST_CASE("hard-edge traces agree with the even sine kernel") {
    // The x = u^2 map carries the a = -1/2 operator on (0, (pi s)^2) onto the even
    // sine operator on (-s, s); their traces coincide.
    const double s = 0.8;
    const auto hard = nystrom_spectrum(KernelSpec::hard_edge(-0.5), Interval(0, (kPi * s) * (kPi * s)), 80);
    const auto even = nystrom_spectrum(KernelSpec::sine_even(), Interval::symmetric(s), 80);
    CHECK(std::abs(hard.trace_estimate - even.trace_estimate) < 1e-12);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(hard.eigenvalues[i] - even.eigenvalues[i]) < 1e-12);
}

}
