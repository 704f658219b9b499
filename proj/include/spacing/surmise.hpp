#pragma once

namespace spacing {

/// Density c1 s^beta exp(-c2 s^{beta+1} / (beta+1)).
struct SurmiseCoefficients {
    double beta = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double density(double s) const;
};

/// s^n e^{-s} / n!.
double poisson_p(int n, double s);

/// Solves the normalization and unit-mean conditions of the ansatz
/// p(s) = c1 mu(s) exp(-c2 int_0^s mu) with mu(s) = s^beta, beta > -1.
SurmiseCoefficients solve_ansatz(double beta);

/// Closed-form 2x2 surmises: (pi/2) s e^{-pi s^2/4}, (32/pi^2) s^2 e^{-4 s^2/pi},
/// (2^18/(3^6 pi^3)) s^4 e^{-64 s^2/(9 pi)}.
double wigner_surmise(int beta, double s);

/// (1/2) p4(0; s/2) with the beta = 4 surmise.
double p1_spacing1_approx(double s);

}  // namespace spacing
