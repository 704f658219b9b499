#include "spacing/surmise.hpp"

#include "spacing/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spacing {

double SurmiseCoefficients::density(double s) const {
    if (s < 0.0) return 0.0;
    if (s == 0.0) return beta == 0.0 ? c1 : (beta < 0.0 ? HUGE_VAL : 0.0);
    const double b = beta + 1.0;
    return std::exp(std::log(c1) + beta * std::log(s) - c2 * std::pow(s, b) / b);
}

double poisson_p(int n, double s) {
    if (n < 0) throw ArgumentError("poisson_p: n must be non-negative");
    if (s < 0.0) throw ArgumentError("poisson_p: s must be non-negative");
    if (s == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(s) - s - std::lgamma(n + 1.0));
}

SurmiseCoefficients solve_ansatz(double beta) {
    if (!(beta > -1.0)) throw ArgumentError("solve_ansatz: beta must exceed -1");
    // With u = c2 s^b / b the normalization integral is c1/c2 and the mean is
    // (b/c2)^{1/b} Gamma(1 + 1/b).
    const double b = beta + 1.0;
    const double c2 = b * std::pow(std::tgamma(1.0 + 1.0 / b), b);
    return {beta, c2, c2};
}

double wigner_surmise(int beta, double s) {
    constexpr double pi = std::numbers::pi;
    if (s < 0.0) return 0.0;
    // Log form keeps s^beta e^{-a s^2} finite for large s.
    auto form = [s](double c, int power, double a) {
        return s == 0.0 ? 0.0 : std::exp(std::log(c) + power * std::log(s) - a * s * s);
    };
    switch (beta) {
        case 1:
            return form(0.5 * pi, 1, 0.25 * pi);
        case 2:
            return form(32.0 / (pi * pi), 2, 4.0 / pi);
        case 4:
            return form(262144.0 / (729.0 * pi * pi * pi), 4, 64.0 / (9.0 * pi));
        default:
            throw UnsupportedError("wigner_surmise: beta must be 1, 2 or 4 (got " + std::to_string(beta) + ")");
    }
}

double p1_spacing1_approx(double s) {
    if (s < 0.0) return 0.0;
    return 0.5 * wigner_surmise(4, 0.5 * s);
}

}  // namespace spacing
