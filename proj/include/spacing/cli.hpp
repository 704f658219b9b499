#pragma once

#include "spacing/tabulate.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spacing {

enum class Command { tabulate, sample, primes, zeros, verify };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

struct RunConfig {
    Command command = Command::verify;
    Quantity quantity = Quantity::E2;
    Method method = Method::all;
    double s_min = 0.0;
    double s_max = 2.0;
    double s_step = 0.05;
    /// Gap index for tabulate, matrix rank for sample.
    int n = 0;
    int beta = 2;
    std::uint64_t seed = 42;
    std::string output_path;
    double tol = 1e-10;
    double t_switch = 0.0;
    double stencil_step = 5e-3;

    int reps = 2000;
    int order = 0;
    /// Histogram bin width; 0 selects the command default.
    double bin = 0.0;
    /// Histogram upper edge; 0 selects the command default.
    double hist_max = 0.0;

    std::uint64_t start = 1000000007ULL;
    std::size_t count = 2000;
    bool export_window = false;

    std::string input_path;
    std::vector<int> criteria;

    /// 0 means number of processors; SPACING_LAB_THREADS overrides.
    unsigned threads = 0;
    std::string command_line;
};

struct ParseOutcome {
    RunConfig config;
    /// Set when parsing already decided the exit (help, usage error).
    bool done = false;
    int exit_code = kExitOk;
};

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes the configured command; CSV goes to output_path or `out`,
/// summaries and diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace spacing
