#pragma once

#include <functional>

#include "qsc/qgaussian.hpp"

namespace qsc {

/// Closed-form continuous-time solution of the backward system for constant
/// coefficients (terminal reward -B x^2):
///
///   h2_t  = sqrt(CK)/gamma (psi- e^{-w(T-t)} - psi+ e^{w(T-t)})
///                         /(psi- e^{-w(T-t)} + psi+ e^{w(T-t)}) - D/(2 gamma)
///   psi+- = sqrt(2C) +- sqrt(2/K) gamma B -+ D/sqrt(2K)
///   w     = gamma sqrt(C/K)
///
/// Requires K > 0, C > 0, gamma != 0, and a denominator bounded away from
/// zero on [0, T]. Time-varying coefficients are out of this module's scope;
/// route those through the discrete backward solver at fine N.
struct ClosedFormSolution {
    double B = 0.0, C = 0.0, D = 0.0, K = 0.0, gamma = 0.0, T = 0.0;
    double psi_plus = 0.0, psi_minus = 0.0;
    double omega = 0.0;  // gamma sqrt(C/K)

    static ClosedFormSolution make(double B, double C, double D, double K, double gamma,
                                   double T);
};

/// h2_t of the closed form. Throws NumericalError if the denominator falls
/// below 1e-14 in magnitude.
double h2_closed(double t, const ClosedFormSolution& sol);

/// Coefficient c(t) with h1_t = c(t) A_hat_t; depends on the latent factor's
/// mean reversion kappa. Throws DegenerateParameters when |omega -+ kappa|
/// < 1e-12 (the formula divides by omega - kappa and omega + kappa).
double h1_coefficient(double t, const ClosedFormSolution& sol, double kappa);

/// h1_t = c(t) A_hat; linear in a_hat, zero at t = T.
double h1_closed(double t, double a_hat, const ClosedFormSolution& sol, double kappa);

/// Per-time value shift alpha_q(t) of the exploratory problem relative to
/// the standard one: H^lambda = H^0 - int_t^T alpha_q(u) du, with psi_t from
/// the q-Gaussian normalizer evaluated at qfactor = K_t:
///
///   q > 1        -lambda/(q-1) + psi_t (q+1)/(3q-1)
///   q = 1        lambda log(sqrt(K_t/(pi lambda)))
///   1/3 < q < 1  -lambda/(q-1) - psi_t (q+1)/(3q-1)
///
/// The q = 1 branch equals the two-sided q -> 1 limit of the other branches
/// and the direct Gaussian entropy computation it summarizes.
double alpha_q(double t, EntropyIndex q, double lambda, double K_t);

/// int_{t0}^{t1} alpha_q(u) du by 64-point Gauss-Legendre quadrature on a
/// caller-supplied K(t); exact when K is constant (alpha_q is constant then).
double alpha_q_integral(EntropyIndex q, double lambda,
                        const std::function<double(double)>& K_of_t, double t0, double t1);

}  // namespace qsc
