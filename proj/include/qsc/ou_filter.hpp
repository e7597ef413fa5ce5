#pragma once

#include <cstddef>
#include <vector>

namespace qsc {

/// Parameters of the latent Ornstein-Uhlenbeck drift A and the observed
/// diffusion Y:  dA = -kappa A dt + eta dW2,  dY = A dt + sigma dW1,
/// with A_0 ~ N(A0_mean, Sigma0).
struct OUParams {
    double kappa = 0.0;    // mean reversion speed
    double eta = 0.0;      // volatility of A
    double sigma = 1.0;    // observation noise volatility of Y
    double A0_mean = 0.0;  // prior mean of A_0 (= filter start)
    double Sigma0 = 0.0;   // prior variance of A_0

    void validate() const;
};

/// Posterior state of the drift filter after n observation increments:
/// A_hat = E[A_n | F_n] and Sigma = E[(A_n - A_hat)^2]. Sigma is a
/// deterministic function of (n, params) only, never of the observations.
struct FilterState {
    std::size_t n = 0;
    double A_hat = 0.0;
    double Sigma = 0.0;
};

/// One filtering step on the observation increment dY = Y_{n+1} - Y_n:
///
///   A_hat' = e^{-kappa dt} A_hat + e^{-kappa dt} Sigma / (sigma^2 + Sigma dt) (dY - A_hat dt)
///   Sigma' = e^{-2 kappa dt} Sigma + eta^2 dt - e^{-2 kappa dt} Sigma^2 dt / (sigma^2 + Sigma dt)
///
/// The caller supplies the increment only; the filter never sees A itself.
FilterState filter_step(const FilterState& state, double dY, const OUParams& params, double dt);

/// The deterministic error-variance sequence Sigma_0..Sigma_N for an N-step
/// grid of spacing dt. Observation independent, so callers precompute it
/// once per (params, N).
std::vector<double> sigma_sequence(const OUParams& params, std::size_t N, double dt);

/// Continuous-time estimation error variance Sigma_t in closed form:
///
///   Sigma_t = [(1 + a+ S0) e^{xi t} - (1 + a- S0) e^{-xi t}] /
///             [-a- (1 + a+ S0) e^{xi t} + a+ (1 + a- S0) e^{-xi t}]
///   a+-    = (-sigma kappa +- sqrt(sigma^2 kappa^2 + eta^2)) / (sigma eta^2)
///   xi     = sqrt(sigma^2 kappa^2 + eta^2) / sigma
///
/// Requires eta > 0 (the expression degenerates otherwise); throws
/// NumericalError when outside the formula's validity region.
double sigma_continuous(double t, const OUParams& params);

}  // namespace qsc
