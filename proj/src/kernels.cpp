#include "spacing/kernels.hpp"

#include "spacing/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace spacing {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2OverPi = 0.79788456080286535588;  // sqrt(2/pi)

bool is_half(double a, double v) { return std::abs(a - v) < 1e-12; }

// 1 - sin(w)/w, accurate for small w.
double one_minus_sinc(double w) {
    if (std::abs(w) > 0.5) return 1.0 - std::sin(w) / w;
    const double w2 = w * w;
    double term = w2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
        term *= -w2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
    }
    return sum;
}

// sin(z)/z - cos(z), which is z^2/3 - z^4/30 + ... near the origin.
double sinc_minus_cos(double z) {
    if (std::abs(z) > 0.5) return std::sin(z) / z - std::cos(z);
    // sum_{k>=1} (-1)^{k+1} z^{2k} * 2k / (2k+1)!
    const double z2 = z * z;
    double power = 1.0;
    double factorial = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 12; ++k) {
        power *= z2;
        factorial *= (2.0 * k) * (2.0 * k + 1.0);
        const double term = power * (2.0 * k) / factorial;
        sum += (k % 2 == 1) ? term : -term;
    }
    return sum;
}

double hard_edge_quotient(double a, double x, double y) {
    // [J(x) y J'(y) - x J'(x) J(y)] / (2 (x^2 - y^2)) with x = sqrt(X).
    const double jx = bessel_half_integer(a, x);
    const double jy = bessel_half_integer(a, y);
    const double dx = bessel_half_integer_derivative(a, x);
    const double dy = bessel_half_integer_derivative(a, y);
    return (jx * y * dy - x * dx * jy) / (2.0 * (x * x - y * y));
}

double singularity_quotient(double a, double x, double y) {
    const double hi = a + 0.5;
    const double lo = a - 0.5;
    const double X = kPi * x;
    const double Y = kPi * y;
    const double num = riccati_bessel(hi, X) * riccati_bessel(lo, Y) -
                       riccati_bessel(hi, Y) * riccati_bessel(lo, X);
    return num / (2.0 * (x - y));
}

}  // namespace

KernelSpec KernelSpec::hard_edge(double a) {
    if (!is_half(a, -0.5) && !is_half(a, 0.5)) {
        std::ostringstream os;
        os << "HardEdgeBessel kernel supports a in {-1/2, 1/2}, got " << a;
        throw UnsupportedError(os.str());
    }
    return KernelSpec(KernelKind::HardEdgeBessel, a);
}

KernelSpec KernelSpec::spectrum_singularity(double a) {
    if (!is_half(a, 0.0) && !is_half(a, 1.0)) {
        std::ostringstream os;
        os << "SpectrumSingularity kernel supports a in {0, 1}, got " << a;
        throw UnsupportedError(os.str());
    }
    return KernelSpec(KernelKind::SpectrumSingularity, a);
}

std::string KernelSpec::name() const {
    std::ostringstream os;
    switch (kind_) {
        case KernelKind::SineBulk: return "SineBulk";
        case KernelKind::SineEven: return "SineEven";
        case KernelKind::SineOdd: return "SineOdd";
        case KernelKind::HardEdgeBessel: os << "HardEdgeBessel(a=" << a_ << ")"; break;
        case KernelKind::SpectrumSingularity: os << "SpectrumSingularity(a=" << a_ << ")"; break;
    }
    return os.str();
}

double sinc(double z) {
    if (std::abs(z) < kDiagonalSwitch) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
    }
    return std::sin(z) / z;
}

double sinc_pi(double z) {
    if (std::abs(z) < kDiagonalSwitch) return sinc(kPi * z);
    return std::sin(kPi * z) / (kPi * z);
}

double bessel_half_integer(double order, double z) {
    if (!(z > 0.0)) {
        throw ArgumentError("bessel_half_integer: argument must be positive");
    }
    const double prefactor = kSqrt2OverPi / std::sqrt(z);
    if (is_half(order, -0.5)) return prefactor * std::cos(z);
    if (is_half(order, 0.5)) return prefactor * std::sin(z);
    if (is_half(order, 1.5)) return prefactor * sinc_minus_cos(z);
    std::ostringstream os;
    os << "bessel_half_integer: unsupported order " << order;
    throw UnsupportedError(os.str());
}

double bessel_half_integer_derivative(double order, double z) {
    if (is_half(order, 0.5)) {
        return bessel_half_integer(-0.5, z) - bessel_half_integer(0.5, z) / (2.0 * z);
    }
    if (is_half(order, -0.5)) {
        return -bessel_half_integer(0.5, z) - bessel_half_integer(-0.5, z) / (2.0 * z);
    }
    std::ostringstream os;
    os << "bessel_half_integer_derivative: unsupported order " << order;
    throw UnsupportedError(os.str());
}

double riccati_bessel(double order, double z) {
    if (is_half(order, -0.5)) return kSqrt2OverPi * std::cos(z);
    if (is_half(order, 0.5)) return kSqrt2OverPi * std::sin(z);
    if (is_half(order, 1.5)) return kSqrt2OverPi * sinc_minus_cos(z);
    std::ostringstream os;
    os << "riccati_bessel: unsupported order " << order;
    throw UnsupportedError(os.str());
}

double hard_edge_diagonal(double a, double t) {
    if (!(t > 0.0)) throw ArgumentError("hard_edge_diagonal: t must be positive");
    KernelSpec::hard_edge(a);  // validates a
    const double z = std::sqrt(t);
    if (is_half(a, 0.5) && z < 0.5) {
        // J'^2 + (1 - 1/(4z^2)) J^2 = (2/(pi z)) (1 - sin(2z)/(2z)); cancels badly near 0.
        return one_minus_sinc(2.0 * z) / (2.0 * kPi * z);
    }
    const double j = bessel_half_integer(a, z);
    const double dj = bessel_half_integer_derivative(a, z);
    return 0.25 * (dj * dj + (1.0 - a * a / t) * j * j);
}

double evaluate(const KernelSpec& kernel, double x, double y) {
    switch (kernel.kind()) {
        case KernelKind::SineBulk:
            return sinc_pi(x - y);
        case KernelKind::SineEven:
            return 0.5 * (sinc_pi(x - y) + sinc_pi(x + y));
        case KernelKind::SineOdd:
            return 0.5 * (sinc_pi(x - y) - sinc_pi(x + y));
        case KernelKind::HardEdgeBessel: {
            if (!(x > 0.0) || !(y > 0.0)) {
                throw ArgumentError("HardEdgeBessel kernel requires x, y > 0");
            }
            const double u = std::sqrt(x);
            const double v = std::sqrt(y);
            if (std::abs(u - v) >= kDiagonalSwitch) return hard_edge_quotient(kernel.a(), u, v);
            if (x == y) return hard_edge_diagonal(kernel.a(), x);
            const double sign = kernel.a() < 0.0 ? 1.0 : -1.0;
            return (sinc(u - v) + sign * sinc(u + v)) / (2.0 * kPi * std::sqrt(u * v));
        }
        case KernelKind::SpectrumSingularity: {
            if (std::abs(x - y) >= kDiagonalSwitch) return singularity_quotient(kernel.a(), x, y);
            if (kernel.a() < 0.5) return sinc_pi(x - y);
            return sinc_pi(x - y) - sinc_pi(x) * sinc_pi(y);
        }
    }
    return 0.0;
}

}  // namespace spacing
