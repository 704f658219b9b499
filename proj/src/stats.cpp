#include "spacing/stats.hpp"

#include "spacing/error.hpp"
#include "spacing/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spacing {

std::uint64_t Histogram::in_range() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram histogram_from_counts(std::vector<double> edges, std::vector<std::uint64_t> counts, std::uint64_t below,
                                std::uint64_t above) {
    if (edges.size() != counts.size() + 1 || counts.empty())
        throw ArgumentError("histogram: need len(edges) = len(counts) + 1 >= 2");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1])) throw ArgumentError("histogram: bin edges must be strictly ascending");
    Histogram h;
    h.bin_edges = std::move(edges);
    h.counts = std::move(counts);
    h.below = below;
    h.above = above;
    h.density.assign(h.counts.size(), 0.0);
    const double n = static_cast<double>(h.in_range());
    if (n > 0)
        for (std::size_t i = 0; i < h.counts.size(); ++i)
            h.density[i] = static_cast<double>(h.counts[i]) / (n * h.width(i));
    return h;
}

Histogram build_histogram(const std::vector<double>& data, double bin_width, const Interval& range) {
    if (data.empty()) throw ArgumentError("build_histogram: empty data");
    if (!(bin_width > 0.0)) throw ArgumentError("build_histogram: bin width must be positive");
    if (range.degenerate()) throw ArgumentError("build_histogram: degenerate range");
    const auto nb = static_cast<std::size_t>(std::ceil(range.length() / bin_width - 1e-9));
    std::vector<double> edges(nb + 1);
    for (std::size_t k = 0; k <= nb; ++k) edges[k] = range.lo() + static_cast<double>(k) * bin_width;
    std::vector<std::uint64_t> counts(nb, 0);
    std::uint64_t below = 0;
    std::uint64_t above = 0;
    for (double x : data) {
        if (!(x >= edges.front())) {
            ++below;
            continue;
        }
        if (!(x < edges.back())) {
            ++above;
            continue;
        }
        auto k = static_cast<std::size_t>((x - range.lo()) / bin_width);
        if (k >= nb) k = nb - 1;
        // Division rounding can misplace values sitting on an edge.
        while (k > 0 && x < edges[k]) --k;
        while (k + 1 < nb && x >= edges[k + 1]) ++k;
        ++counts[k];
    }
    return histogram_from_counts(std::move(edges), std::move(counts), below, above);
}

double integrate_pdf(const std::function<double(double)>& pdf, double a, double b) {
    const QuadratureRule rule = gauss_legendre(12, Interval(a, b));
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * pdf(rule.nodes[i]);
    return sum;
}

namespace {

GoodnessOfFit finish(double chi2, int cells, int constraints) {
    GoodnessOfFit r;
    r.statistic = chi2;
    r.cells = cells;
    r.dof = cells - constraints;
    if (r.dof < 1) throw NumericError("chi-square: too few cells after merging (" + std::to_string(cells) + ")");
    r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * chi2);
    return r;
}

}  // namespace

GoodnessOfFit chi_square_gof(const Histogram& h, const std::function<double(double)>& pdf) {
    const double total = static_cast<double>(h.total());
    if (total <= 0) throw ArgumentError("chi_square_gof: empty histogram");
    std::vector<double> expected;
    std::vector<double> observed;
    double prob_sum = 0.0;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        const double p = integrate_pdf(pdf, h.bin_edges[i], h.bin_edges[i + 1]);
        prob_sum += p;
        expected.push_back(p * total);
        observed.push_back(static_cast<double>(h.counts[i]));
    }
    expected.push_back(std::max(0.0, 1.0 - prob_sum) * total);
    observed.push_back(static_cast<double>(h.overflow()));

    double chi2 = 0.0;
    int cells = 0;
    double e_acc = 0.0;
    double o_acc = 0.0;
    double e_last = 0.0;
    double o_last = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        e_acc += expected[i];
        o_acc += observed[i];
        if (e_acc >= 5.0) {
            chi2 += (o_acc - e_acc) * (o_acc - e_acc) / e_acc;
            ++cells;
            e_last = e_acc;
            o_last = o_acc;
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (cells == 0) throw NumericError("chi-square: total expected count below 5");
        // Fold the remainder into the last emitted cell.
        chi2 -= (o_last - e_last) * (o_last - e_last) / e_last;
        e_last += e_acc;
        o_last += o_acc;
        chi2 += (o_last - e_last) * (o_last - e_last) / e_last;
    }
    return finish(chi2, cells, 1);
}

GoodnessOfFit chi_square_homogeneity(const Histogram& a, const Histogram& b) {
    if (a.bin_edges != b.bin_edges) throw ArgumentError("chi_square_homogeneity: histograms differ in binning");
    std::vector<double> ca;
    std::vector<double> cb;
    for (std::size_t i = 0; i < a.bins(); ++i) {
        ca.push_back(static_cast<double>(a.counts[i]));
        cb.push_back(static_cast<double>(b.counts[i]));
    }
    ca.push_back(static_cast<double>(a.overflow()));
    cb.push_back(static_cast<double>(b.overflow()));
    const double na = static_cast<double>(a.total());
    const double nb = static_cast<double>(b.total());
    const double n = na + nb;

    // Merge adjacent cells until both expected counts reach 5.
    std::vector<std::pair<double, double>> cells;
    double acc_a = 0.0;
    double acc_b = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        acc_a += ca[i];
        acc_b += cb[i];
        const double col = acc_a + acc_b;
        if (col * na / n >= 5.0 && col * nb / n >= 5.0) {
            cells.emplace_back(acc_a, acc_b);
            acc_a = 0.0;
            acc_b = 0.0;
        }
    }
    if (acc_a + acc_b > 0.0) {
        if (cells.empty()) throw NumericError("chi-square: total expected count below 5");
        cells.back().first += acc_a;
        cells.back().second += acc_b;
    }
    double chi2 = 0.0;
    for (const auto& [oa, ob] : cells) {
        const double col = oa + ob;
        const double ea = col * na / n;
        const double eb = col * nb / n;
        chi2 += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    return finish(chi2, static_cast<int>(cells.size()), 1);
}

double ks_histogram(const Histogram& h, const std::function<double(double)>& cdf) {
    const double total = static_cast<double>(h.total());
    if (total <= 0) throw ArgumentError("ks_histogram: empty histogram");
    double cum = static_cast<double>(h.below);
    double d = std::abs(cum / total - cdf(h.bin_edges.front()));
    for (std::size_t i = 0; i < h.bins(); ++i) {
        cum += static_cast<double>(h.counts[i]);
        d = std::max(d, std::abs(cum / total - cdf(h.bin_edges[i + 1])));
    }
    return d;
}

double ks_distance(std::vector<double> data, const std::function<double(double)>& cdf) {
    if (data.empty()) throw ArgumentError("ks_distance: empty data");
    std::sort(data.begin(), data.end());
    const double n = static_cast<double>(data.size());
    double d = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double f = cdf(data[i]);
        d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
    }
    return d;
}

}  // namespace spacing
