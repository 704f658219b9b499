#include "spacing/cli.hpp"

#include "spacing/error.hpp"
#include "spacing/parallel.hpp"
#include "spacing/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace spacing {

namespace {

template <typename Enum, typename Parse>
void add_enum_option(CLI::App* app, const std::string& flag, Enum& target, Parse parse, const std::string& help,
                     const std::string& default_text) {
    app->add_option_function<std::string>(
           flag, [&target, parse](const std::string& v) { target = parse(v); }, help)
        ->default_str(default_text);
}

void write_output(const RunConfig& c, std::ostream& out, const std::string& text) {
    if (c.output_path.empty() || c.output_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(c.output_path, std::ios::binary);
    if (!f) throw FormatError("cannot open output file: " + c.output_path);
    f << text;
    if (!f) throw FormatError("failed writing output file: " + c.output_path);
}

std::vector<std::pair<std::string, std::string>> command_meta(const RunConfig& c) {
    if (c.command_line.empty()) return {};
    return {{"command", c.command_line}};
}

int run_tabulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    TabulateRequest r;
    r.quantity = c.quantity;
    r.method = c.method;
    r.s_min = c.s_min;
    r.s_max = c.s_max;
    r.s_step = c.s_step;
    r.n = c.n;
    r.beta = c.beta;
    r.threads = resolve_threads(c.threads);
    r.painleve.tol = c.tol;
    r.painleve.t_switch = c.t_switch;
    r.stencil_step = c.stencil_step;
    SpacingTable t = tabulate(r);
    std::vector<std::pair<std::string, std::string>> meta = command_meta(c);
    for (const auto& kv : t.metadata()) meta.push_back(kv);
    SpacingTable out_table(t.s_grid());
    for (const auto& [k, v] : meta) out_table.add_metadata(k, v);
    for (const auto& [name, col] : t.columns()) out_table.add_column(name, col);
    std::ostringstream os;
    out_table.write_csv(os);
    write_output(c, out, os.str());
    for (const auto& d : pairwise_deviations(t))
        err << "max |" << d.a << " - " << d.b << "| = " << format_double(d.max_abs) << "\n";
    return kExitOk;
}

int run_sample_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SampleRequest r;
    r.n = c.n;
    r.reps = c.reps;
    r.seed = c.seed;
    r.order = c.order;
    if (c.bin > 0.0) r.bin = c.bin;
    r.s_max = c.hist_max;
    r.threads = resolve_threads(c.threads);
    const SampleReport rep = run_sample(r);
    std::ostringstream os;
    write_sample_csv(os, r, rep, command_meta(c));
    write_output(c, out, os.str());
    err << "mean spacing " << format_double(rep.mean) << ", chi-square p vs exact " << format_double(rep.vs_exact.p_value)
        << ", vs surmise " << format_double(rep.vs_surmise.p_value) << ", clipped eigenvalues " << rep.clipped << "\n";
    return kExitOk;
}

int run_primes_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
    PrimeRequest r;
    r.start = c.start;
    r.count = c.count;
    r.order = c.order;
    if (c.hist_max > 0.0) r.s_max = c.hist_max;
    std::ostringstream os;
    if (c.export_window) {
        write_prime_window_csv(os, r);
        write_output(c, out, os.str());
        return kExitOk;
    }
    const PrimeReport rep = run_primes(r);
    write_primes_csv(os, r, rep, command_meta(c));
    write_output(c, out, os.str());
    err << "mean s " << format_double(rep.mean_s) << ", KS distance " << format_double(rep.ks) << "\n";
    return kExitOk;
}

int run_zeros_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.input_path.empty()) throw ArgumentError("zeros: --input is required");
    ZeroRequest r;
    r.path = c.input_path;
    if (c.bin > 0.0) r.bin = c.bin;
    if (c.hist_max > 0.0) r.s_max = c.hist_max;
    const ZeroReport rep = run_zeros(r);
    std::ostringstream os;
    write_zeros_csv(os, r, rep, command_meta(c));
    write_output(c, out, os.str());
    err << rep.zeros << " zeros, mean unfolded spacing " << format_double(rep.mean_spacing)
        << ", chi-square p vs p2nn " << format_double(rep.vs_p2nn.p_value) << "\n";
    return kExitOk;
}

int run_verify_cmd(const RunConfig& c, std::ostream& out) {
    VerifyOptions opt;
    opt.threads = resolve_threads(c.threads);
    opt.only = c.criteria;
    bool ok = true;
    std::ostringstream os;
    for (const auto& r : run_verification(opt)) {
        os << format_result(r) << "\n";
        ok = ok && r.pass;
    }
    write_output(c, out, os.str());
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    ParseOutcome result;
    RunConfig& c = result.config;
    // The output path is left out so runs differing only in destination
    // produce identical files.
    std::ostringstream cmd;
    cmd << "spacing-lab";
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "-o" || a == "--output") {
            ++i;
            continue;
        }
        if (a.rfind("--output=", 0) == 0) continue;
        cmd << " " << a;
    }
    c.command_line = cmd.str();

    CLI::App app{"Eigenvalue spacing distributions and gap probabilities", "spacing-lab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", c.threads, "worker pool size (default: processors; SPACING_LAB_THREADS overrides)");
    app.add_option("-o,--output", c.output_path, "CSV output path (default: stdout)");

    auto* tab = app.add_subcommand("tabulate", "tabulate a quantity on an s grid");
    tab->footer(quantity_help());
    add_enum_option(tab, "--quantity", c.quantity, parse_quantity, "E2|E1|E4|Enn|p0|p1gap|p2nn|En", "E2");
    add_enum_option(tab, "--method", c.method, parse_method, "fredholm|painleve|surmise|all", "all");
    tab->add_option("--s-min", c.s_min, "first grid point")->capture_default_str();
    tab->add_option("--s-max", c.s_max, "last grid point")->capture_default_str();
    tab->add_option("--s-step", c.s_step, "grid step")->capture_default_str();
    tab->add_option("--n", c.n, "gap index for En")->capture_default_str();
    tab->add_option("--beta", c.beta, "symmetry class for p0 (1, 2, 4)")->capture_default_str();
    tab->add_option("--tol", c.tol, "Painleve integration tolerance")->capture_default_str();
    tab->add_option("--t-switch", c.t_switch, "series/ODE switch point (0: equation default)")->capture_default_str();
    tab->add_option("--stencil-step", c.stencil_step, "finite-difference step for fredholm densities")
        ->capture_default_str();

    auto* sample = app.add_subcommand("sample", "GOE Monte Carlo spacing histogram");
    sample->add_option("--n", c.n, "matrix rank (odd)")->default_val(13);
    sample->add_option("--reps", c.reps, "number of matrices")->capture_default_str();
    sample->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sample->add_option("--order", c.order, "0: nearest gaps, 1: gap spanning one level")->capture_default_str();
    sample->add_option("--bin", c.bin, "bin width (default 0.1)");
    sample->add_option("--s-max", c.hist_max, "histogram upper edge (default 4, or 6 for order 1)");

    auto* primes = app.add_subcommand("primes", "prime gap histogram in units of log(start)");
    primes->add_option("--start", c.start, "first candidate")->capture_default_str();
    primes->add_option("--count", c.count, "number of primes")->capture_default_str();
    primes->add_option("--order", c.order, "0 or 1")->capture_default_str();
    primes->add_option("--s-max", c.hist_max, "histogram upper edge (default 8)");
    primes->add_flag("--export-window", c.export_window, "write index,prime,gap instead of the histogram");

    auto* zeros = app.add_subcommand("zeros", "nearest-neighbour spacings of zeta zeros");
    zeros->add_option("--input", c.input_path, "file with one ordinate per line, '#' comments")->required();
    zeros->add_option("--bin", c.bin, "bin width (default 0.1)");
    zeros->add_option("--s-max", c.hist_max, "histogram upper edge (default 3)");

    auto* verify = app.add_subcommand("verify", "run the cross-method acceptance suite");
    verify->add_option("--criteria", c.criteria, "subset of criterion ids")->check(CLI::Range(1, 13));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        result.done = true;
        return result;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        result.done = true;
        return result;
    } catch (const CLI::ParseError& e) {
        err << "spacing-lab: " << e.what() << "\n";
        result.done = true;
        result.exit_code = kExitUsage;
        return result;
    } catch (const Error& e) {
        err << "spacing-lab: " << e.what() << "\n";
        result.done = true;
        result.exit_code = kExitUsage;
        return result;
    }
    if (tab->parsed()) c.command = Command::tabulate;
    if (sample->parsed()) c.command = Command::sample;
    if (primes->parsed()) c.command = Command::primes;
    if (zeros->parsed()) c.command = Command::zeros;
    if (verify->parsed()) c.command = Command::verify;
    return result;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        switch (c.command) {
            case Command::tabulate:
                return run_tabulate(c, out, err);
            case Command::sample:
                return run_sample_cmd(c, out, err);
            case Command::primes:
                return run_primes_cmd(c, out, err);
            case Command::zeros:
                return run_zeros_cmd(c, out, err);
            case Command::verify:
                return run_verify_cmd(c, out);
        }
    } catch (const ArgumentError& e) {
        err << "spacing-lab: usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "spacing-lab: usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "spacing-lab: error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "spacing-lab: error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace spacing
