#pragma once

#include "spacing/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spacing {

struct PrimeWindow {
    std::uint64_t start = 2;
    std::vector<std::uint64_t> primes;
    std::size_t count = 0;
};

struct ZeroDataset {
    std::vector<double> ordinates;
    std::string source_path;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// First `count` primes >= start from a segmented odd-only sieve, each
/// confirmed by Miller-Rabin.
PrimeWindow primes_from(std::uint64_t start, std::size_t count, std::size_t segment = std::size_t{1} << 20);

/// Gaps between each prime and its (order+1)-th successor in units
/// s = t / log(start). Bins have width 2/log(start) and are right-closed in t:
/// bin k collects t in (2(k-1), 2k].
Histogram prime_spacing_histogram(const PrimeWindow& window, int order, double s_max = 8.0);

/// Raw gaps t for the given order.
std::vector<std::uint64_t> prime_gaps(const PrimeWindow& window, int order);

ZeroDataset load_zeros(const std::string& path);
ZeroDataset parse_zeros(const std::string& text, const std::string& source = "<memory>");

/// min(left gap, right gap) for each interior point.
std::vector<double> nn_statistic(const std::vector<double>& points);

/// Smooth zero counting function (g/2pi)(log(g/2pi) - 1) + 7/8.
double zero_counting(double gamma);
std::vector<double> unfold_zeros(const ZeroDataset& data);

}  // namespace spacing
