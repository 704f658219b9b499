#include "spacing/series.hpp"

#include "spacing/error.hpp"

#include <algorithm>
#include <cmath>

namespace spacing {

namespace {

void require_same_q(const Series& a, const Series& b) {
    if (a.q() != b.q()) throw ArgumentError("series with different exponent denominators");
}

// Sum_{n>=0} coef[n] x^n for x with positive valuation, truncated to hi.
Series compose(const Series& x, int hi, double (*coef)(int, double), double c0) {
    Series result = Series::constant(coef(0, c0), x.q()).truncated(hi);
    if (x.terms().empty()) return result;
    const int lo = x.lo();
    if (lo < 1) throw ArgumentError("series composition needs positive exponents");
    Series power = Series::constant(1.0, x.q());
    for (int n = 1; n * lo <= hi; ++n) {
        power = (power * x).truncated(hi);
        result += power * coef(n, c0);
    }
    return result.truncated(hi);
}

Series shifted(const Series& a) {
    Series x = a;
    x.set(0, 0.0);
    return x;
}

void require_inexact(const Series& a, const char* what) {
    if (a.exact() && !shifted(a).terms().empty()) {
        throw ArgumentError(std::string(what) + " of a non-constant exact series needs a truncation order");
    }
}

}  // namespace

int Series::lo() const {
    for (const auto& [k, c] : terms_) {
        if (c != 0.0) return k;
    }
    return hi_;
}

void Series::set(int k, double c) {
    if (k > hi_) return;
    if (c == 0.0) {
        terms_.erase(k);
    } else {
        terms_[k] = c;
    }
}

Series Series::truncated(int hi) const {
    Series s(q_, std::min(hi_, hi));
    for (const auto& [k, c] : terms_) {
        if (k <= s.hi_) s.terms_[k] = c;
    }
    return s;
}

Series Series::derivative() const {
    Series s(q_, exact() ? kExact : hi_ - q_);
    for (const auto& [k, c] : terms_) {
        if (k != 0) s.set(k - q_, c * k / q_);
    }
    return s;
}

Series Series::times_t() const {
    Series s(q_, exact() ? kExact : hi_ + q_);
    for (const auto& [k, c] : terms_) s.terms_[k + q_] = c;
    return s;
}

double Series::operator()(double t) const {
    double v = 0.0;
    for (const auto& [k, c] : terms_) v += c * std::pow(t, static_cast<double>(k) / q_);
    return v;
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& kv : s.terms_) kv.second = -kv.second;
    return s;
}

Series& Series::operator+=(const Series& b) {
    require_same_q(*this, b);
    hi_ = std::min(hi_, b.hi_);
    for (auto it = terms_.begin(); it != terms_.end();) {
        it = it->first > hi_ ? terms_.erase(it) : std::next(it);
    }
    for (const auto& [k, c] : b.terms_) {
        if (k <= hi_) set(k, coeff(k) + c);
    }
    return *this;
}

Series& Series::operator*=(double c) {
    for (auto& kv : terms_) kv.second *= c;
    return *this;
}

Series operator+(const Series& a, const Series& b) {
    Series s = a;
    s += b;
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    require_same_q(a, b);
    const int alo = a.lo();
    const int blo = b.lo();
    long long bound = std::min(static_cast<long long>(a.hi()) + blo, static_cast<long long>(b.hi()) + alo);
    const int hi = static_cast<int>(std::min<long long>(bound, Series::kExact));
    Series s(a.q(), hi);
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (ka + kb <= hi) s.set(ka + kb, s.coeff(ka + kb) + ca * cb);
        }
    }
    return s;
}

Series operator+(const Series& a, double c) { return a + Series::constant(c, a.q()); }
Series operator+(double c, const Series& a) { return a + c; }
Series operator-(const Series& a, double c) { return a + (-c); }
Series operator-(double c, const Series& a) { return (-a) + c; }
Series operator*(const Series& a, double c) {
    Series s = a;
    s *= c;
    return s;
}
Series operator*(double c, const Series& a) { return a * c; }

Series sqrt(const Series& a) {
    require_inexact(a, "sqrt");
    const double c0 = a.coeff(0);
    if (!(c0 > 0.0)) throw ArgumentError("sqrt of a series needs a positive constant term");
    // sqrt(c0) * (1 + x)^(1/2) with x = (a - c0)/c0.
    const Series x = shifted(a) * (1.0 / c0);
    auto binomial = [](int n, double) {
        double b = 1.0;
        for (int j = 0; j < n; ++j) b *= (0.5 - j) / (j + 1);
        return b;
    };
    return compose(x, a.hi(), binomial, 0.0) * std::sqrt(c0);
}

Series exp(const Series& a) {
    require_inexact(a, "exp");
    auto inv_factorial = [](int n, double) {
        double f = 1.0;
        for (int j = 2; j <= n; ++j) f /= j;
        return f;
    };
    return compose(shifted(a), a.hi(), inv_factorial, 0.0) * std::exp(a.coeff(0));
}

Series log(const Series& a) {
    require_inexact(a, "log");
    const double c0 = a.coeff(0);
    if (!(c0 > 0.0)) throw ArgumentError("log of a series needs a positive constant term");
    const Series x = shifted(a) * (1.0 / c0);
    auto log_coef = [](int n, double) { return n == 0 ? 0.0 : ((n % 2 == 1) ? 1.0 : -1.0) / n; };
    return compose(x, a.hi(), log_coef, 0.0) + std::log(c0);
}

}  // namespace spacing
