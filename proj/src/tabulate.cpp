#include "spacing/tabulate.hpp"

#include "spacing/error.hpp"
#include "spacing/fredholm.hpp"
#include "spacing/montecarlo.hpp"
#include "spacing/parallel.hpp"
#include "spacing/sequences.hpp"
#include "spacing/surmise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace spacing {

namespace {

constexpr const char* kVersion = "spacing-lab 0.1.0";

std::vector<std::pair<std::string, Quantity>> quantity_names() {
    return {{"E2", Quantity::E2}, {"E1", Quantity::E1},     {"E4", Quantity::E4},     {"Enn", Quantity::Enn},
            {"p0", Quantity::p0}, {"p1gap", Quantity::p1gap}, {"p2nn", Quantity::p2nn}, {"En", Quantity::En}};
}

std::vector<std::pair<std::string, Method>> method_names() {
    return {{"fredholm", Method::fredholm},
            {"painleve", Method::painleve},
            {"surmise", Method::surmise},
            {"all", Method::all}};
}

double e1_length(double s) { return e1_bulk_det(0.5 * s); }

}  // namespace

std::string to_string(Quantity q) {
    for (const auto& [name, v] : quantity_names())
        if (v == q) return name;
    return "?";
}

std::string to_string(Method m) {
    for (const auto& [name, v] : method_names())
        if (v == m) return name;
    return "?";
}

Quantity parse_quantity(const std::string& text) {
    for (const auto& [name, v] : quantity_names())
        if (name == text) return v;
    throw ArgumentError("unknown quantity '" + text + "'");
}

Method parse_method(const std::string& text) {
    for (const auto& [name, v] : method_names())
        if (name == text) return v;
    throw ArgumentError("unknown method '" + text + "'");
}

std::vector<Method> supported_methods(Quantity q) {
    switch (q) {
        case Quantity::p0:
        case Quantity::p1gap:
            return {Method::fredholm, Method::painleve, Method::surmise};
        case Quantity::En:
            return {Method::fredholm, Method::painleve};
        default:
            return {Method::fredholm, Method::painleve};
    }
}

std::string quantity_help() {
    return "Quantities (s is the interval length unless noted):\n"
           "  E2     E_2(0;s), GUE gap probability            fredholm, painleve\n"
           "  E1     E_1(0;s), GOE gap probability            fredholm, painleve\n"
           "  E4     E_4(0;s), GSE gap probability            fredholm, painleve\n"
           "  Enn    nearest-neighbour gap probability, s = distance   fredholm, painleve\n"
           "  p0     p_beta(0;s) spacing density, --beta 1|2|4        fredholm, painleve, surmise\n"
           "  p1gap  p_1(1;s), GOE spacing with one level between    fredholm, painleve, surmise\n"
           "  p2nn   nearest-neighbour spacing density (GUE)         fredholm, painleve\n"
           "  En     E_2(n;s), --n gap index                          fredholm (painleve for n = 0)\n";
}

std::string column_name(const TabulateRequest& r, Method m) {
    std::string q = to_string(r.quantity);
    if (r.quantity == Quantity::p0) q = "p" + std::to_string(r.beta);
    if (r.quantity == Quantity::En) q = "E2_n" + std::to_string(r.n);
    return q + "_" + to_string(m);
}

double stencil_second(const std::function<double(double)>& f, double s, double h) {
    if (s >= 2.0 * h) {
        return (-f(s - 2 * h) + 16.0 * f(s - h) - 30.0 * f(s) + 16.0 * f(s + h) - f(s + 2 * h)) / (12.0 * h * h);
    }
    return (35.0 * f(s) - 104.0 * f(s + h) + 114.0 * f(s + 2 * h) - 56.0 * f(s + 3 * h) + 11.0 * f(s + 4 * h)) /
           (12.0 * h * h);
}

double stencil_first(const std::function<double(double)>& f, double s, double h) {
    if (s >= 2.0 * h) return (f(s - 2 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2 * h)) / (12.0 * h);
    return (-25.0 * f(s) + 48.0 * f(s + h) - 36.0 * f(s + 2 * h) + 16.0 * f(s + 3 * h) - 3.0 * f(s + 4 * h)) /
           (12.0 * h);
}

double evaluate(const TabulateRequest& r, Method m, double s) {
    if (!(s >= 0.0)) throw ArgumentError("s must be non-negative");
    const auto& opt = r.painleve;
    const double h = r.stencil_step;
    auto unsupported = [&]() -> double {
        throw UnsupportedError("quantity " + to_string(r.quantity) + " has no " + to_string(m) + " method");
    };
    switch (r.quantity) {
        case Quantity::E2:
            if (m == Method::fredholm) return e2_bulk_det(0.5 * s);
            if (m == Method::painleve) return e2_bulk(0.5 * s, 1.0, opt);
            return unsupported();
        case Quantity::E1:
            if (m == Method::fredholm) return e1_bulk_det(0.5 * s);
            if (m == Method::painleve) return e1_bulk(0.5 * s, opt);
            return unsupported();
        case Quantity::E4:
            if (m == Method::fredholm) return e4_bulk_det(s);
            if (m == Method::painleve) return e4_bulk(s, opt);
            return unsupported();
        case Quantity::Enn:
            if (m == Method::fredholm) return enn_det(s, 1.0);
            if (m == Method::painleve) return enn_generating(s, 1.0, 1.0, opt);
            return unsupported();
        case Quantity::p0:
            if (r.beta != 1 && r.beta != 2 && r.beta != 4)
                throw UnsupportedError("p0: beta must be 1, 2 or 4 (got " + std::to_string(r.beta) + ")");
            if (m == Method::surmise) return wigner_surmise(r.beta, s);
            if (m == Method::painleve) {
                if (r.beta == 1) return p1_direct(s, opt);
                if (r.beta == 2) return p2_direct(s, opt);
                return p4_direct(s, opt);
            }
            if (m == Method::fredholm) {
                if (r.beta == 1) return stencil_second(e1_length, s, h);
                if (r.beta == 2) return stencil_second([](double x) { return e2_bulk_det(0.5 * x); }, s, h);
                return stencil_second([](double x) { return e4_bulk_det(x); }, s, h);
            }
            return unsupported();
        case Quantity::p1gap:
            if (m == Method::surmise) return p1_spacing1_approx(s);
            if (m == Method::painleve) return 0.5 * p4_direct(0.5 * s, opt);
            if (m == Method::fredholm) {
                return stencil_second(
                    [](double x) {
                        const auto e = e1_gap_profile(0.5 * x, 1);
                        return 2.0 * e[0] + e[1];
                    },
                    s, h);
            }
            return unsupported();
        case Quantity::p2nn:
            if (m == Method::painleve) return p2_nn(s, opt);
            if (m == Method::fredholm) return -stencil_first([](double x) { return enn_det(x, 1.0); }, s, h);
            return unsupported();
        case Quantity::En:
            if (r.n < 0 || r.n > kMaxGapIndex)
                throw UnsupportedError("En: n must be in [0, " + std::to_string(kMaxGapIndex) + "]");
            if (m == Method::fredholm) return e2_gap_profile(0.5 * s, r.n)[r.n];
            if (m == Method::painleve && r.n == 0) return e2_bulk(0.5 * s, 1.0, opt);
            return unsupported();
    }
    return unsupported();
}

SpacingTable tabulate(const TabulateRequest& r) {
    if (!(r.s_min >= 0.0)) throw ArgumentError("s_min must be non-negative");
    if (!(r.s_step > 0.0)) throw ArgumentError("s_step must be positive");
    if (!(r.s_max >= r.s_min)) throw ArgumentError("s_max must be at least s_min");
    std::vector<Method> methods;
    if (r.method == Method::all) {
        methods = supported_methods(r.quantity);
        if (r.quantity == Quantity::En && r.n != 0) methods = {Method::fredholm};
    } else {
        methods = {r.method};
    }
    // Reject unsupported combinations before any work is scheduled.
    for (Method m : methods) {
        const auto sup = supported_methods(r.quantity);
        if (std::find(sup.begin(), sup.end(), m) == sup.end() ||
            (r.quantity == Quantity::En && m == Method::painleve && r.n != 0))
            throw UnsupportedError("quantity " + to_string(r.quantity) + " has no " + to_string(m) + " method");
    }

    SpacingTable table = SpacingTable::uniform(r.s_min, r.s_max, r.s_step);
    const std::size_t ns = table.size();
    const std::size_t nm = methods.size();
    std::vector<double> values(ns * nm);
    parallel_for(ns * nm, r.threads, [&](std::size_t idx) {
        const std::size_t i = idx / nm;
        const std::size_t j = idx % nm;
        values[idx] = evaluate(r, methods[j], table.s_grid()[i]);
    });
    table.add_metadata("generator", kVersion);
    table.add_metadata("quantity", to_string(r.quantity));
    if (r.quantity == Quantity::p0) table.add_metadata("beta", std::to_string(r.beta));
    if (r.quantity == Quantity::En) table.add_metadata("n", std::to_string(r.n));
    table.add_metadata("painleve_tol", format_double(r.painleve.tol));
    table.add_metadata("painleve_t_switch", r.painleve.t_switch == 0.0 ? "default" : format_double(r.painleve.t_switch));
    table.add_metadata("stencil_step", format_double(r.stencil_step));
    for (std::size_t j = 0; j < nm; ++j) {
        std::vector<double> col(ns);
        for (std::size_t i = 0; i < ns; ++i) col[i] = values[i * nm + j];
        table.add_column(column_name(r, methods[j]), std::move(col));
    }
    return table;
}

std::vector<Deviation> pairwise_deviations(const SpacingTable& t) {
    std::vector<Deviation> out;
    const auto& cols = t.columns();
    for (std::size_t a = 0; a < cols.size(); ++a) {
        for (std::size_t b = a + 1; b < cols.size(); ++b) {
            Deviation d{cols[a].first, cols[b].first, 0.0};
            for (std::size_t i = 0; i < t.size(); ++i)
                d.max_abs = std::max(d.max_abs, std::abs(cols[a].second[i] - cols[b].second[i]));
            out.push_back(d);
        }
    }
    return out;
}

void write_histogram_csv(std::ostream& os, const Histogram& h,
                         const std::vector<std::pair<std::string, std::string>>& metadata,
                         const std::vector<std::pair<std::string, std::vector<double>>>& extra) {
    for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << "\n";
    os << "bin_left,bin_right,count,density";
    for (const auto& [name, col] : extra) {
        if (col.size() != h.bins()) throw ArgumentError("histogram column '" + name + "' has wrong length");
        os << "," << name;
    }
    os << "\n";
    for (std::size_t i = 0; i < h.bins(); ++i) {
        os << format_double(h.bin_edges[i]) << "," << format_double(h.bin_edges[i + 1]) << "," << h.counts[i] << ","
           << format_double(h.density[i]);
        for (const auto& [name, col] : extra) os << "," << format_double(col[i]);
        os << "\n";
    }
}

SampleReport run_sample(const SampleRequest& r) {
    if (r.order < 0 || r.order > 1) throw ArgumentError("sample: order must be 0 or 1");
    if (!(r.bin > 0.0)) throw ArgumentError("sample: bin width must be positive");
    const double s_max = r.s_max > 0.0 ? r.s_max : (r.order == 0 ? 4.0 : 6.0);
    const auto ens = ensemble_spacings(r.n, r.reps, r.seed, r.order, r.threads);
    SampleReport rep;
    rep.histogram = build_histogram(ens.spacings, r.bin, Interval(0.0, s_max));
    rep.clipped = ens.clipped;
    rep.mean = std::accumulate(ens.spacings.begin(), ens.spacings.end(), 0.0) / static_cast<double>(ens.spacings.size());
    std::function<double(double)> exact;
    std::function<double(double)> surmise;
    if (r.order == 0) {
        exact = [](double s) { return p1_direct(s); };
        surmise = [](double s) { return wigner_surmise(1, s); };
    } else {
        exact = [](double s) { return 0.5 * p4_direct(0.5 * s); };
        surmise = [](double s) { return p1_spacing1_approx(s); };
    }
    rep.vs_exact = chi_square_gof(rep.histogram, exact);
    rep.vs_surmise = chi_square_gof(rep.histogram, surmise);
    for (std::size_t i = 0; i < rep.histogram.bins(); ++i) {
        rep.exact.push_back(exact(rep.histogram.center(i)));
        rep.surmise.push_back(surmise(rep.histogram.center(i)));
    }
    return rep;
}

void write_sample_csv(std::ostream& os, const SampleRequest& r, const SampleReport& rep,
                      const std::vector<std::pair<std::string, std::string>>& meta) {
    auto m = meta;
    m.insert(m.end(), {{"generator", kVersion},
                       {"ensemble", "GOE, tridiagonal three-term recurrence"},
                       {"n", std::to_string(r.n)},
                       {"reps", std::to_string(r.reps)},
                       {"seed", std::to_string(r.seed)},
                       {"order", std::to_string(r.order)},
                       {"spacings", r.order == 0 ? "central pair pooled" : "spanning the middle level"},
                       {"mean", format_double(rep.mean)},
                       {"clipped", std::to_string(rep.clipped)},
                       {"overflow", std::to_string(rep.histogram.overflow())},
                       {"chi2_exact", format_double(rep.vs_exact.statistic)},
                       {"chi2_exact_dof", std::to_string(rep.vs_exact.dof)},
                       {"chi2_exact_p", format_double(rep.vs_exact.p_value)},
                       {"chi2_surmise", format_double(rep.vs_surmise.statistic)},
                       {"chi2_surmise_dof", std::to_string(rep.vs_surmise.dof)},
                       {"chi2_surmise_p", format_double(rep.vs_surmise.p_value)}});
    write_histogram_csv(os, rep.histogram, m, {{"exact", rep.exact}, {"surmise", rep.surmise}});
}

PrimeReport run_primes(const PrimeRequest& r) {
    if (r.order < 0 || r.order > 1) throw ArgumentError("primes: order must be 0 or 1");
    const PrimeWindow w = primes_from(r.start, r.count);
    PrimeReport rep;
    rep.histogram = prime_spacing_histogram(w, r.order, r.s_max);
    const double ln = std::log(static_cast<double>(r.start));
    const auto gaps = prime_gaps(w, r.order);
    double sum = 0.0;
    for (auto t : gaps) sum += static_cast<double>(t) / ln;
    rep.mean_s = sum / static_cast<double>(gaps.size());
    const int order = r.order;
    rep.ks = ks_histogram(rep.histogram, [order](double s) {
        return order == 0 ? 1.0 - std::exp(-s) : 1.0 - (1.0 + s) * std::exp(-s);
    });
    for (std::size_t i = 0; i < rep.histogram.bins(); ++i) {
        const double s = rep.histogram.center(i);
        rep.model.push_back(poisson_p(order, s));
    }
    return rep;
}

void write_primes_csv(std::ostream& os, const PrimeRequest& r, const PrimeReport& rep,
                      const std::vector<std::pair<std::string, std::string>>& meta) {
    auto m = meta;
    m.insert(m.end(), {{"generator", kVersion},
                       {"start", std::to_string(r.start)},
                       {"count", std::to_string(r.count)},
                       {"order", std::to_string(r.order)},
                       {"units", "s = t / log(start), bins right-closed in t"},
                       {"mean_s", format_double(rep.mean_s)},
                       {"overflow", std::to_string(rep.histogram.overflow())},
                       {"ks", format_double(rep.ks)}});
    write_histogram_csv(os, rep.histogram, m, {{"poisson", rep.model}});
}

void write_prime_window_csv(std::ostream& os, const PrimeRequest& r) {
    const PrimeWindow w = primes_from(r.start, r.count);
    os << "# generator: " << kVersion << "\n# start: " << r.start << "\n";
    os << "index,prime,gap\n";
    for (std::size_t i = 0; i < w.primes.size(); ++i) {
        os << i << "," << w.primes[i] << ",";
        if (i + 1 < w.primes.size()) os << (w.primes[i + 1] - w.primes[i]);
        os << "\n";
    }
}

ZeroReport run_zeros(const ZeroRequest& r) {
    const ZeroDataset d = load_zeros(r.path);
    const auto u = unfold_zeros(d);
    const auto nn = nn_statistic(u);
    ZeroReport rep;
    rep.zeros = d.ordinates.size();
    rep.mean_spacing = (u.back() - u.front()) / static_cast<double>(u.size() - 1);
    rep.histogram = build_histogram(nn, r.bin, Interval(0.0, r.s_max));
    rep.vs_p2nn = chi_square_gof(rep.histogram, [](double s) { return p2_nn(s); });
    for (std::size_t i = 0; i < rep.histogram.bins(); ++i) rep.p2nn.push_back(p2_nn(rep.histogram.center(i)));
    return rep;
}

void write_zeros_csv(std::ostream& os, const ZeroRequest& r, const ZeroReport& rep,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
    auto m = meta;
    m.insert(m.end(), {{"generator", kVersion},
                       {"source", r.path},
                       {"zeros", std::to_string(rep.zeros)},
                       {"unfolding", "N(g) = (g/2pi)(log(g/2pi) - 1) + 7/8"},
                       {"mean_spacing", format_double(rep.mean_spacing)},
                       {"chi2_p2nn", format_double(rep.vs_p2nn.statistic)},
                       {"chi2_p2nn_dof", std::to_string(rep.vs_p2nn.dof)},
                       {"chi2_p2nn_p", format_double(rep.vs_p2nn.p_value)}});
    write_histogram_csv(os, rep.histogram, m, {{"p2nn", rep.p2nn}});
}

}  // namespace spacing
