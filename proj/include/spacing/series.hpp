#pragma once

#include <cmath>
#include <map>

namespace spacing {

/// Truncated generalized power series sum_k c_k t^{k/q}.
///
/// hi() is the largest k whose coefficient is known exactly; arithmetic
/// propagates it so that results never claim more orders than their inputs
/// determine. Exact constants and polynomials carry hi() = kExact.
class Series {
public:
    static constexpr int kExact = 1 << 28;

    explicit Series(int q = 1, int hi = kExact) : q_(q), hi_(hi) {}

    static Series constant(double c, int q) {
        Series s(q);
        s.set(0, c);
        return s;
    }

    int q() const { return q_; }
    int hi() const { return hi_; }
    /// Smallest k with a non-zero coefficient; hi() for the zero series.
    int lo() const;
    bool exact() const { return hi_ >= kExact; }

    double coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? 0.0 : it->second;
    }
    void set(int k, double c);
    const std::map<int, double>& terms() const { return terms_; }

    Series truncated(int hi) const;
    /// d/dt.
    Series derivative() const;
    /// t * (this).
    Series times_t() const;
    double operator()(double t) const;

    Series operator-() const;
    Series& operator+=(const Series& b);
    Series& operator*=(double c);

private:
    int q_;
    int hi_;
    std::map<int, double> terms_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator+(const Series& a, double c);
Series operator+(double c, const Series& a);
Series operator-(const Series& a, double c);
Series operator-(double c, const Series& a);
Series operator*(const Series& a, double c);
Series operator*(double c, const Series& a);

/// Square root of a series with positive constant term.
Series sqrt(const Series& a);
/// exp and log of an inexact series (log requires a positive constant term).
Series exp(const Series& a);
Series log(const Series& a);

/// Value with first derivatives with respect to (w, p).
struct Dual2 {
    double v = 0.0;
    double dw = 0.0;
    double dp = 0.0;
};

inline Dual2 operator+(Dual2 a, Dual2 b) { return {a.v + b.v, a.dw + b.dw, a.dp + b.dp}; }
inline Dual2 operator-(Dual2 a, Dual2 b) { return {a.v - b.v, a.dw - b.dw, a.dp - b.dp}; }
inline Dual2 operator-(Dual2 a) { return {-a.v, -a.dw, -a.dp}; }
inline Dual2 operator*(Dual2 a, Dual2 b) {
    return {a.v * b.v, a.dw * b.v + a.v * b.dw, a.dp * b.v + a.v * b.dp};
}
inline Dual2 operator+(Dual2 a, double c) { return {a.v + c, a.dw, a.dp}; }
inline Dual2 operator+(double c, Dual2 a) { return a + c; }
inline Dual2 operator-(Dual2 a, double c) { return {a.v - c, a.dw, a.dp}; }
inline Dual2 operator-(double c, Dual2 a) { return {c - a.v, -a.dw, -a.dp}; }
inline Dual2 operator*(Dual2 a, double c) { return {a.v * c, a.dw * c, a.dp * c}; }
inline Dual2 operator*(double c, Dual2 a) { return a * c; }
inline Dual2 sqrt(Dual2 a) {
    const double r = std::sqrt(a.v);
    return {r, a.dw / (2.0 * r), a.dp / (2.0 * r)};
}

}  // namespace spacing
