#pragma once

#include "spacing/error.hpp"

#include <string>

namespace spacing {

/// Closed real segment [lo, hi] on which gap probabilities are posed.
class Interval {
public:
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) {
            throw ArgumentError("Interval: lo must not exceed hi (got " + std::to_string(lo) +
                                ", " + std::to_string(hi) + ")");
        }
    }

    /// The interval (-s, s).
    static Interval symmetric(double s) { return {-s, s}; }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double length() const { return hi_ - lo_; }
    double midpoint() const { return 0.5 * (lo_ + hi_); }
    bool degenerate() const { return hi_ == lo_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_;
    double hi_;
};

}  // namespace spacing
