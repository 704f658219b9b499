#pragma once

#include "spacing/painleve.hpp"
#include "spacing/stats.hpp"
#include "spacing/table.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spacing {

enum class Quantity { E2, E1, E4, Enn, p0, p1gap, p2nn, En };
enum class Method { fredholm, painleve, surmise, all };

std::string to_string(Quantity q);
std::string to_string(Method m);
Quantity parse_quantity(const std::string& text);
Method parse_method(const std::string& text);

/// Methods that can evaluate q (for p0, also depends on beta).
std::vector<Method> supported_methods(Quantity q);

/// One line per quantity: meaning and supported methods.
std::string quantity_help();

struct TabulateRequest {
    Quantity quantity = Quantity::E2;
    Method method = Method::all;
    double s_min = 0.0;
    double s_max = 2.0;
    double s_step = 0.05;
    /// Gap index for En.
    int n = 0;
    /// Symmetry class for p0.
    int beta = 2;
    unsigned threads = 1;
    PainleveOptions painleve;
    /// Step of the finite-difference stencils in the fredholm densities.
    double stencil_step = 5e-3;
};

/// Column name for a (quantity, method) pair, e.g. "E2_fredholm".
std::string column_name(const TabulateRequest& r, Method m);

/// Evaluates one quantity by one method at s. Quantities are functions of
/// the interval length s, except Enn and p2nn where s is the distance to the
/// nearest neighbour.
double evaluate(const TabulateRequest& r, Method m, double s);

SpacingTable tabulate(const TabulateRequest& r);

struct Deviation {
    std::string a;
    std::string b;
    double max_abs = 0.0;
};
std::vector<Deviation> pairwise_deviations(const SpacingTable& t);

/// Second derivative of f at s by a 5-point stencil of step h; forward
/// stencil when s < 2h.
double stencil_second(const std::function<double(double)>& f, double s, double h);
double stencil_first(const std::function<double(double)>& f, double s, double h);

/// Histogram CSV: metadata lines, header bin_left,bin_right,count,density
/// plus extra columns (one value per bin).
void write_histogram_csv(std::ostream& os, const Histogram& h,
                         const std::vector<std::pair<std::string, std::string>>& metadata,
                         const std::vector<std::pair<std::string, std::vector<double>>>& extra);

struct SampleRequest {
    int n = 13;
    int reps = 2000;
    std::uint64_t seed = 42;
    int order = 0;
    double bin = 0.1;
    /// 0 selects 4 for order 0 and 6 for order 1.
    double s_max = 0.0;
    unsigned threads = 1;
};

struct SampleReport {
    Histogram histogram;
    GoodnessOfFit vs_exact;
    GoodnessOfFit vs_surmise;
    double mean = 0.0;
    long clipped = 0;
    std::vector<double> exact;    // at bin centers
    std::vector<double> surmise;  // at bin centers
};

/// Ensemble histogram of central spacings with the exact and surmise curves.
SampleReport run_sample(const SampleRequest& r);
void write_sample_csv(std::ostream& os, const SampleRequest& r, const SampleReport& rep,
                      const std::vector<std::pair<std::string, std::string>>& meta = {});

struct PrimeRequest {
    std::uint64_t start = 1000000007ULL;
    std::size_t count = 2000;
    int order = 0;
    double s_max = 8.0;
};

struct PrimeReport {
    Histogram histogram;
    double ks = 0.0;
    double mean_s = 0.0;
    std::vector<double> model;  // s^order e^{-s} at bin centers
};

PrimeReport run_primes(const PrimeRequest& r);
void write_primes_csv(std::ostream& os, const PrimeRequest& r, const PrimeReport& rep,
                      const std::vector<std::pair<std::string, std::string>>& meta = {});
/// index, prime, gap (gap to the next prime; empty for the last).
void write_prime_window_csv(std::ostream& os, const PrimeRequest& r);

struct ZeroRequest {
    std::string path;
    double bin = 0.1;
    double s_max = 3.0;
};

struct ZeroReport {
    Histogram histogram;
    GoodnessOfFit vs_p2nn;
    double mean_spacing = 0.0;
    std::size_t zeros = 0;
    std::vector<double> p2nn;
};

ZeroReport run_zeros(const ZeroRequest& r);
void write_zeros_csv(std::ostream& os, const ZeroRequest& r, const ZeroReport& rep,
                     const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace spacing
