#pragma once

#include "spacing/series.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace spacing {

enum class Equation {
    SigmaJmms,     // sine-kernel sigma-PV
    SigmaHard,     // hard-edge sigma-PIII'
    SigmaHardGen,  // hard-edge sigma-PIII' with the extra parameter mu
    SigmaNN,       // spectrum-singularity sigma-PIII
    UTilde,        // first-derivative form for the beta = 1 spacing
    VTilde,        // first-derivative form for the beta = 4 spacing
    VP2            // second-derivative form for the beta = 2 spacing
};

std::string equation_name(Equation id);

/// One term c t^{k/q} of a boundary-layer series.
struct SeriesTerm {
    int k = 0;
    int q = 1;
    double coefficient = 0.0;
    double exponent() const { return static_cast<double>(k) / q; }
};

/// Every equation is (t s'')^2 + G(t s' - s, s') = 0 with G fixed by the
/// identifier and parameters. sign = -1 means s = -u where u solves the
/// base equation.
struct PainleveProblem {
    Equation id = Equation::SigmaJmms;
    double a = 0.0;
    double mu = 0.0;
    double xi = 1.0;
    double sign = 1.0;
    int q = 1;
    /// Leading data taken from the boundary condition, keyed by k.
    std::vector<SeriesTerm> pinned;
    /// Full boundary-layer series, ascending in k.
    std::vector<SeriesTerm> series;
    double t_switch = 1e-2;
    /// The integrator's local tolerance is tol times this factor. Equations
    /// whose free boundary parameter multiplies a fast-growing mode use a
    /// factor below one.
    double step_tolerance_factor = 1.0;
};

inline constexpr double kDefaultTSwitch = 1e-2;
/// V_P2's free t^5 mode amplifies start-up errors by (t / t_switch)^5, so its
/// series layer is carried further out.
inline constexpr double kVP2TSwitch = 0.1;

/// Problem constructors. Each loads the boundary-condition data and extends
/// the series until the tail at t_switch is below 1e-12 of the leading term.
PainleveProblem sigma_jmms(double xi, double t_switch = kDefaultTSwitch);
PainleveProblem sigma_hard(double a, double xi, double t_switch = kDefaultTSwitch);
/// mu in {0, 2}; mu = 2 only at xi = 1.
PainleveProblem sigma_hard_gen(double a, double mu, double xi, double t_switch = kDefaultTSwitch);
PainleveProblem sigma_nn(double a, double xi, double t_switch = kDefaultTSwitch);
PainleveProblem u_tilde(double t_switch = kDefaultTSwitch);
PainleveProblem v_tilde(double t_switch = kDefaultTSwitch);
PainleveProblem v_p2(double t_switch = kVP2TSwitch);

/// Coefficients for k = 1..n_terms obtained by matching orders. Pinned
/// coefficients are kept; each other coefficient is fixed by the first order
/// of the residual that depends on it (the non-zero root where that
/// dependence is quadratic). Throws DerivationError for unpinned resonances
/// or leading data that leave a non-zero residual.
std::vector<SeriesTerm> extend_series(const PainleveProblem& problem, int n_terms);

/// sigma, sigma', sigma'' and int_0^t sigma/t' dt' of a series at t.
std::array<double, 4> series_state(const std::vector<SeriesTerm>& series, double t);

/// |(t s'')^2 + G| divided by the sum of the magnitudes of its terms, with
/// w = t s' - s counted as |t s'| + |s|.
double relative_defect(const PainleveProblem& problem, double t, double s, double ds, double d2s);

/// Relative defect of the given series at t.
double series_relative_defect(const PainleveProblem& problem, const std::vector<SeriesTerm>& series,
                              double t);

class PainleveSolution {
public:
    /// sigma(t), from the series layer for t <= t_switch.
    double sigma(double t) const;
    double sigma_prime(double t) const;
    double sigma_second(double t) const;
    /// int_0^t sigma(u)/u du.
    double log_integral(double t) const;

    double t_max() const { return grid_.back(); }
    const PainleveProblem& problem() const { return problem_; }
    const std::vector<double>& grid() const { return grid_; }
    /// Largest relative defect of the original equation over accepted steps.
    double max_defect() const { return max_defect_; }
    /// Largest gap between the Hermite interpolant and the integrator's own
    /// dense output at step midpoints.
    double interpolation_error() const { return interp_error_; }
    std::size_t steps() const { return grid_.size() - 1; }

private:
    friend PainleveSolution integrate(const PainleveProblem&, double, double);

    using State = std::array<double, 4>;
    State interpolate(double t) const;

    PainleveProblem problem_;
    std::vector<double> grid_;
    std::vector<State> states_;
    std::vector<double> third_;  // sigma''' at grid points
    double max_defect_ = 0.0;
    double interp_error_ = 0.0;
};

/// Integrates sigma''' = -(2 t sigma'' + t G_w + G_p)/(2 t^2), the
/// derivative of the sigma-form divided by sigma'', together with
/// int sigma/t, from t_switch to t_max with an adaptive Dormand–Prince 5(4)
/// pair. Throws ConsistencyError if the original equation's relative
/// defect exceeds 100 tol, StiffnessError on step-size underflow.
PainleveSolution integrate(const PainleveProblem& problem, double t_max, double tol = 1e-10);

struct PainleveOptions {
    /// 0 selects each equation's default.
    double t_switch = 0.0;
    double tol = 1e-10;
};

/// Trajectory reaching at least t, shared across callers.
std::shared_ptr<const PainleveSolution> cached_solution(const PainleveProblem& problem, double t,
                                                        double tol);

/// Argument scale of the sine-kernel formula: E2((-s, s)) uses the
/// trajectory up to 2 kJmmsScale s.
inline constexpr double kJmmsScale = 3.14159265358979323846;

/// E2(0; (-s, s); xi) = exp int_0^{2 pi s} sigma/u du.
double e2_bulk(double s, double xi = 1.0, const PainleveOptions& opt = {});
/// E2^hard((0, s); xi) = exp int_0^s u/t dt.
double e2_hard(double s, double a, double xi = 1.0, const PainleveOptions& opt = {});
/// E1(0; (-s, s)) = e2_hard((pi s)^2, -1/2).
double e1_bulk(double s, const PainleveOptions& opt = {});
/// E4(0; (-s/2, s/2)) = (e2_hard((pi s)^2, -1/2) + e2_hard((pi s)^2, 1/2)) / 2.
double e4_bulk(double s, const PainleveOptions& opt = {});
/// E^nn((-s, s); xi) = exp int_0^{2 pi s} sigma_a/t dt.
double enn_generating(double s, double a, double xi = 1.0, const PainleveOptions& opt = {});
/// Nearest-neighbour spacing density -d/ds E^nn at a = xi = 1.
double p2_nn(double s, const PainleveOptions& opt = {});
/// beta = 1 spacing density from the first-derivative form.
double p1_direct(double s, const PainleveOptions& opt = {});
/// beta = 4 spacing density.
double p4_direct(double s, const PainleveOptions& opt = {});
/// beta = 2 spacing density from the second-derivative form.
double p2_direct(double s, const PainleveOptions& opt = {});
/// Left minus right side of the hard-edge mu = 0 / mu = 2 derivative identity at xi = 1.
double am5_identity_residual(double s, double a, const PainleveOptions& opt = {});

}  // namespace spacing
