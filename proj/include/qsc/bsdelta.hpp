#pragma once

#include <cstddef>
#include <vector>

namespace qsc {

/// Coefficients of the discrete linear-quadratic criterion
///
///   J = E[ -B X_N^2 + sum_n (D_n X_n nu_n - C_n X_n^2 - K_n nu_n^2) dt ],
///
/// with per-step sequences of length N (constant coefficients are the
/// degenerate case) and controlled dynamics X_n = Y_n + sum gamma_i nu_i dt.
struct LQCoefficients {
    double B = 0.0;
    std::vector<double> C;
    std::vector<double> D;
    std::vector<double> K;
    std::vector<double> gamma;
    double dt = 0.0;
    std::size_t N = 0;

    static LQCoefficients constant(double B, double C, double D, double K, double gamma,
                                   double T, std::size_t N);
    void validate() const;
};

/// Output of the backward pass: h2_n and phi_n on n = 0..N (h1_n = phi_n A_hat_n),
/// plus the per-step quadratic penalty qfactor_n = K_n - h2_{n+1} gamma_n^2 dt
/// on n = 0..N-1, which must stay positive for the inner maximization to be
/// strictly concave.
struct BackwardSolution {
    std::vector<double> h2;       // length N+1, h2[N] = -B
    std::vector<double> phi;      // length N+1, phi[N] = 0
    std::vector<double> qfactor;  // length N
};

/// Backward recursion for the deterministic coefficient h2:
///
///   h2_n = h2_{n+1} - C_n dt + (2 h2_{n+1} gamma_n + D_n)^2 / (4 qfactor_n) dt,
///   h2_N = -B.
///
/// Throws ConvexityViolation (with the offending step) if any qfactor_n <= 0.
std::vector<double> solve_h2(const LQCoefficients& coeffs);

/// Backward recursion for phi (the h1 = phi * A_hat representation under the
/// OU latent factor, whose mean reversion enters via E[A_hat_{n+1}|F_n] =
/// e^{-kappa dt} A_hat_n):
///
///   phi_n = a_n dt + (1 + b_n dt) e^{-kappa dt} phi_{n+1},  phi_N = 0,
///   a_n   = 2 h2_{n+1} (1 + b_n dt),
///   b_n   = gamma_n (2 h2_{n+1} gamma_n + D_n) / (2 qfactor_n).
std::vector<double> solve_phi(const LQCoefficients& coeffs, const std::vector<double>& h2,
                              double kappa);

/// Convenience: both recursions plus the qfactor sequence.
BackwardSolution solve_backward(const LQCoefficients& coeffs, double kappa);

/// The classical optimal feedback control
///
///   nu*_n = (e^{-kappa dt} phi_{n+1} A_hat gamma_n + 2 h2_{n+1} A_hat gamma_n dt
///            + (2 h2_{n+1} gamma_n + D_n) x) / (2 qfactor_n).
///
/// This is also the location parameter of the optimal exploratory density.
double classical_control(std::size_t n, double x, double a_hat, const BackwardSolution& sol,
                         const LQCoefficients& coeffs, double kappa);

}  // namespace qsc
