#pragma once

#include "spacing/interval.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace spacing {

struct Histogram {
    std::vector<double> bin_edges;
    std::vector<std::uint64_t> counts;
    std::vector<double> density;
    std::uint64_t below = 0;
    std::uint64_t above = 0;

    std::size_t bins() const { return counts.size(); }
    double width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
    double center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
    std::uint64_t in_range() const;
    std::uint64_t overflow() const { return below + above; }
    std::uint64_t total() const { return in_range() + overflow(); }
};

/// Left-closed bins [lo + k w, lo + (k+1) w) covering `range`.
Histogram build_histogram(const std::vector<double>& data, double bin_width, const Interval& range);

/// Histogram from precomputed counts; fills density.
Histogram histogram_from_counts(std::vector<double> edges, std::vector<std::uint64_t> counts, std::uint64_t below,
                                std::uint64_t above);

struct GoodnessOfFit {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
    int cells = 0;
};

/// Pearson chi-square of the histogram (plus one cell collecting all overflow)
/// against `pdf`. Cells with expected count below 5 are merged with their
/// right neighbour.
GoodnessOfFit chi_square_gof(const Histogram& h, const std::function<double(double)>& pdf);

/// Two-sample chi-square homogeneity test on histograms with identical edges.
GoodnessOfFit chi_square_homogeneity(const Histogram& a, const Histogram& b);

/// Bin probability of `pdf` over [a, b] by Gauss-Legendre.
double integrate_pdf(const std::function<double(double)>& pdf, double a, double b);

/// max |F_hist(e) - cdf(e)| over bin edges e, with F_hist counting overflow.
double ks_histogram(const Histogram& h, const std::function<double(double)>& cdf);

/// Classical one-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> data, const std::function<double(double)>& cdf);

}  // namespace spacing
