#include "spacing/verify.hpp"

#include "spacing/fredholm.hpp"
#include "spacing/painleve.hpp"
#include "spacing/parallel.hpp"
#include "spacing/quadrature.hpp"
#include "spacing/surmise.hpp"
#include "spacing/tabulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

namespace spacing {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    const auto n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) g.push_back(lo + i * step);
    return g;
}

double max_over(const std::vector<double>& xs, unsigned threads, const std::function<double(double)>& f) {
    std::vector<double> v(xs.size());
    parallel_for(xs.size(), threads, [&](std::size_t i) { v[i] = f(xs[i]); });
    double m = 0.0;
    for (double x : v) m = std::max(m, std::isnan(x) ? INFINITY : x);
    return m;
}

double p1_one_between(double L) {
    return stencil_second(
        [](double x) {
            const auto e = e1_gap_profile(0.5 * x, 1);
            return 2.0 * e[0] + e[1];
        },
        L, 5e-3);
}

CriterionResult c1(unsigned threads) {
    CriterionResult r{1, "E2 Nystrom vs Painleve", false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const double d = max_over(grid(0.25, 2.0, 0.25), threads,
                              [](double s) { return std::abs(e2_bulk_det(s) - e2_bulk(s)); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = d <= 1e-6 && secs < 60.0;
    r.detail = "max|dE2| = " + sci(d) + " (tol 1e-6), runtime " + sci(secs) + " s (limit 60)";
    return r;
}

CriterionResult c2(unsigned) {
    CriterionResult r{2, "parity identities", false, "", 0.0};
    double prod = 0.0;
    double gaudin = 0.0;
    for (double s : {0.5, 1.0}) {
        const auto p = parity_split(Interval::symmetric(s));
        prod = std::max(prod, std::abs(p.plus * p.minus - e2_bulk_det(s)));
        const auto g = gaudin_split([](double x) { return e2_bulk_det(x); }, s);
        gaudin = std::max({gaudin, std::abs(g.plus - p.plus), std::abs(g.minus - p.minus)});
    }
    r.pass = prod <= 1e-10 && gaudin <= 1e-6;
    r.detail = "max|D+D- - E2| = " + sci(prod) + " (tol 1e-10), max|parity - Gaudin| = " + sci(gaudin) +
               " (tol 1e-6)";
    return r;
}

CriterionResult c3(unsigned threads) {
    CriterionResult r{3, "E1 and E4 dual routes", false, "", 0.0};
    const auto g = grid(0.25, 2.0, 0.25);
    const double d1 = max_over(g, threads, [](double s) { return std::abs(e1_bulk_det(s) - e1_bulk(s)); });
    const double d4 = max_over(g, threads, [](double s) { return std::abs(e4_bulk_det(s) - e4_bulk(s)); });
    r.pass = d1 <= 1e-6 && d4 <= 1e-6;
    r.detail = "max|dE1| = " + sci(d1) + ", max|dE4| = " + sci(d4) + " (tol 1e-6)";
    return r;
}

CriterionResult c4(unsigned threads) {
    CriterionResult r{4, "direct densities vs stencils", false, "", 0.0};
    const auto g = grid(0.2, 2.0, 0.05);
    const double h = 5e-3;
    const double d2 = max_over(g, threads, [h](double s) {
        return std::abs(p2_direct(s) - stencil_second([](double x) { return e2_bulk_det(0.5 * x); }, s, h));
    });
    const double d1 = max_over(g, threads, [h](double s) {
        return std::abs(p1_direct(s) - stencil_second([](double x) { return e1_bulk_det(0.5 * x); }, s, h));
    });
    const double d4 = max_over(g, threads, [h](double s) {
        return std::abs(p4_direct(s) - stencil_second([](double x) { return e4_bulk_det(x); }, s, h));
    });
    r.pass = d2 <= 1e-4 && d1 <= 1e-4 && d4 <= 1e-4;
    r.detail = "max|dp2| = " + sci(d2) + ", max|dp1| = " + sci(d1) + ", max|dp4| = " + sci(d4) + " (tol 1e-4)";
    return r;
}

CriterionResult c5(unsigned threads) {
    CriterionResult r{5, "Wigner surmise accuracy", false, "", 0.0};
    const double d = max_over(grid(0.0, 3.0, 0.01), threads,
                              [](double s) { return std::abs(p1_direct(s) - wigner_surmise(1, s)); });
    r.pass = d <= 0.02;
    r.detail = "max|p1 - surmise| on [0,3] = " + sci(d) + " (tol 0.02)";
    return r;
}

CriterionResult c6(unsigned threads) {
    CriterionResult r{6, "p4(0;s) = 2 p1(1;2s)", false, "", 0.0};
    const double d =
        max_over({0.4, 0.7, 1.0}, threads, [](double s) { return std::abs(p4_direct(s) - 2.0 * p1_one_between(2.0 * s)); });
    r.pass = d <= 5e-4;
    r.detail = "max|p4(0;s) - 2 p1(1;2s)| = " + sci(d) + " (tol 5e-4)";
    return r;
}

CriterionResult c7(unsigned threads) {
    CriterionResult r{7, "sum rule", false, "", 0.0};
    constexpr int kN = 8;
    SpacingTable t = SpacingTable::uniform(0.1, 2.0, 5e-3);
    std::vector<std::vector<double>> rows(t.size());
    parallel_for(t.size(), threads, [&](std::size_t i) { rows[i] = e2_gap_profile(0.5 * t.s_grid()[i], kN); });
    for (int n = 0; n <= kN; ++n) {
        std::vector<double> col(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) col[i] = rows[i][n];
        t.add_column("E" + std::to_string(n), std::move(col));
    }
    std::vector<double> sum(t.size(), 0.0);
    for (int n = 0; n <= kN; ++n) {
        const auto p = spacing_from_gaps(t, n);
        for (std::size_t i = 0; i < t.size(); ++i) sum[i] += p.values[i];
    }
    double d = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double x = kPi * t.s_grid()[i];
        const double sinc = std::sin(x) / x;
        d = std::max(d, std::abs(sum[i] - (1.0 - sinc * sinc)));
    }
    r.pass = d <= 2e-3;
    r.detail = "max|sum_{n<=8} p2(n;s) - (1 - sinc^2)| on [0.1,2] = " + sci(d) + " (tol 2e-3)";
    return r;
}

CriterionResult c8(unsigned) {
    CriterionResult r{8, "hard-edge derivative identity", false, "", 0.0};
    const double m = std::abs(am5_identity_residual(1.0, -0.5));
    const double p = std::abs(am5_identity_residual(1.0, 0.5));
    r.pass = m <= 1e-7 && p <= 1e-7;
    r.detail = "residual a=-1/2: " + sci(m) + ", a=+1/2: " + sci(p) + " (tol 1e-7)";
    return r;
}

CriterionResult c9(unsigned) {
    CriterionResult r{9, "boundary-layer series", false, "", 0.0};
    const std::vector<std::pair<std::string, PainleveProblem>> problems = {
        {"sine", sigma_jmms(1.0)},         {"hard-", sigma_hard(-0.5, 1.0)}, {"hard+", sigma_hard(0.5, 1.0)},
        {"nn", sigma_nn(1.0, 1.0)},        {"u", u_tilde()},                 {"v", v_tilde()},
        {"v2", v_p2()}};
    double worst = 0.0;
    std::ostringstream os;
    for (const auto& [name, pr] : problems) {
        const double d = series_relative_defect(pr, pr.series, pr.t_switch);
        worst = std::max(worst, d);
        os << name << " " << sci(d) << "; ";
    }
    r.pass = worst <= 1e-8;
    r.detail = os.str() + "max " + sci(worst) + " (tol 1e-8)";
    return r;
}

CriterionResult c10(unsigned threads) {
    CriterionResult r{10, "GOE Monte Carlo histograms", false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    SampleRequest q;
    q.threads = threads;
    q.order = 0;
    const auto r0 = run_sample(q);
    q.order = 1;
    const auto r1 = run_sample(q);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = r0.vs_exact.p_value > 0.01 && r1.vs_exact.p_value > 0.01 && secs < 30.0;
    r.detail = "order 0 vs p1(0;s): p = " + sci(r0.vs_exact.p_value) + ", order 1 vs p4(0;s/2)/2: p = " +
               sci(r1.vs_exact.p_value) + " (need > 0.01), runtime " + sci(secs) + " s (limit 30)";
    return r;
}

CriterionResult c11(unsigned) {
    CriterionResult r{11, "prime gaps vs Poisson", false, "", 0.0};
    PrimeRequest q;
    q.order = 0;
    const auto r0 = run_primes(q);
    q.order = 1;
    const auto r1 = run_primes(q);
    r.pass = r0.ks <= 0.08 && r1.ks <= 0.08;
    r.detail = "KS order 0 = " + sci(r0.ks) + ", order 1 = " + sci(r1.ks) + " (tol 0.08)";
    return r;
}

CriterionResult c12(unsigned threads) {
    CriterionResult r{12, "nearest-neighbour routes", false, "", 0.0};
    const double d = max_over({0.25, 0.5, 1.0}, threads,
                              [](double s) { return std::abs(enn_det(s, 1.0) - enn_generating(s, 1.0)); });
    constexpr int kPanels = 30;
    constexpr double kUpper = 3.0;
    std::vector<double> parts(kPanels);
    parallel_for(kPanels, threads, [&](std::size_t i) {
        const double a = kUpper * static_cast<double>(i) / kPanels;
        const double b = kUpper * static_cast<double>(i + 1) / kPanels;
        const auto rule = gauss_legendre(12, Interval(a, b));
        double sum = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * p2_nn(rule.nodes[k]);
        parts[i] = sum;
    });
    double integral = 0.0;
    for (double p : parts) integral += p;
    r.pass = d <= 1e-6 && std::abs(integral - 1.0) <= 1e-3;
    r.detail = "max|dEnn| = " + sci(d) + " (tol 1e-6), int_0^3 p2nn = " + sci(integral) + " (tol 1e-3)";
    return r;
}

CriterionResult c13(unsigned threads) {
    CriterionResult r{13, "determinism", false, "", 0.0};
    const unsigned other = std::max(2u, threads);
    auto table_csv = [](unsigned th) {
        TabulateRequest q;
        q.quantity = Quantity::E2;
        q.s_max = 1.0;
        q.s_step = 0.1;
        q.threads = th;
        std::ostringstream os;
        tabulate(q).write_csv(os);
        return os.str();
    };
    auto sample_csv = [](unsigned th) {
        SampleRequest q;
        q.reps = 300;
        q.threads = th;
        std::ostringstream os;
        write_sample_csv(os, q, run_sample(q));
        return os.str();
    };
    auto primes_csv = [] {
        PrimeRequest q;
        std::ostringstream os;
        write_primes_csv(os, q, run_primes(q));
        return os.str();
    };
    const bool t = table_csv(1) == table_csv(other);
    const bool s = sample_csv(1) == sample_csv(other);
    const bool p = primes_csv() == primes_csv();
    r.pass = t && s && p;
    r.detail = std::string("tabulate ") + (t ? "identical" : "DIFFERS") + ", sample " + (s ? "identical" : "DIFFERS") +
               ", primes " + (p ? "identical" : "DIFFERS") + " (1 vs " + std::to_string(other) + " threads)";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_verification(const VerifyOptions& opt) {
    const std::vector<std::function<CriterionResult(unsigned)>> all = {c1, c2, c3, c4,  c5,  c6, c7,
                                                                       c8, c9, c10, c11, c12, c13};
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = all[i](std::max(1u, opt.threads));
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(r);
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail + " (" +
           secs + " s)";
}

}  // namespace spacing
