#pragma once

#include <string>

namespace spacing {

enum class KernelKind { SineBulk, SineEven, SineOdd, HardEdgeBessel, SpectrumSingularity };

/// Identifies one of the closed-form integral-operator kernels.
///
/// HardEdgeBessel supports a = -1/2 and a = +1/2; SpectrumSingularity
/// supports a = 0 and a = 1. Other parameters throw UnsupportedError at
/// construction.
class KernelSpec {
public:
    static KernelSpec sine_bulk() { return KernelSpec(KernelKind::SineBulk, 0.0); }
    static KernelSpec sine_even() { return KernelSpec(KernelKind::SineEven, 0.0); }
    static KernelSpec sine_odd() { return KernelSpec(KernelKind::SineOdd, 0.0); }
    static KernelSpec hard_edge(double a);
    static KernelSpec spectrum_singularity(double a);

    KernelKind kind() const { return kind_; }
    double a() const { return a_; }
    std::string name() const;

    /// Hard-edge kernels live on (0, s); Nyström uses the x = u^2 graded rule for them.
    bool positive_axis() const { return kind_ == KernelKind::HardEdgeBessel; }

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
    KernelSpec(KernelKind kind, double a) : kind_(kind), a_(a) {}

    KernelKind kind_;
    double a_;
};

/// Width of the diagonal neighbourhood (in the Bessel/sine argument
/// variable) inside which the quotient forms are replaced by Taylor
/// expansions.
inline constexpr double kDiagonalSwitch = 1e-4;

/// sin(z)/z, with a four-term Taylor expansion for |z| < kDiagonalSwitch.
double sinc(double z);

/// sin(pi z)/(pi z).
double sinc_pi(double z);

/// Kernel value K(x, y). The diagonal is evaluated by its analytic limit.
/// Throws ArgumentError for hard-edge arguments outside (0, inf).
double evaluate(const KernelSpec& kernel, double x, double y);

/// J_nu(z) for nu in {-1/2, 1/2, 3/2}, z > 0, from the closed trigonometric
/// forms (power series near the origin for nu = 3/2).
double bessel_half_integer(double order, double z);

/// d/dz J_nu(z) for nu in {-1/2, 1/2}.
double bessel_half_integer_derivative(double order, double z);

/// sqrt(z) J_nu(z) continued to all real z, nu in {-1/2, 1/2, 3/2}.
double riccati_bessel(double order, double z);

/// K^hard(t, t): the x -> y limit of the hard-edge kernel,
/// [J_a'(sqrt t)^2 + (1 - a^2/t) J_a(sqrt t)^2] / 4.
double hard_edge_diagonal(double a, double t);

}  // namespace spacing
