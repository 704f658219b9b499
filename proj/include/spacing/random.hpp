#pragma once

#include <cstdint>

namespace spacing {

/// Counter-based generator: the k-th output of stream (seed, stream) is a
/// fixed function of (seed, stream, k), so workers can split streams freely.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    /// Uniform on (0, 1), never 0 or 1.
    double uniform();
    double normal();
    /// Gamma(shape, 1) with density proportional to x^{shape-1} e^{-x}.
    double gamma(double shape);

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace spacing
