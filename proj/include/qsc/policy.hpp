#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qsc/bsdelta.hpp"
#include "qsc/continuous.hpp"
#include "qsc/qgaussian.hpp"

namespace qsc {

/// Discrete-time tables built from the closed-form continuous solution
/// evaluated at the grid times: h2[n] = h2_closed(t_n), phi[n] = h1
/// coefficient at t_n, qfactor from the usual per-step expression. Feeding
/// these into the discrete feedback formulas yields the approximating policy
/// of the closed-form-substitution scheme.
BackwardSolution closed_form_tables(const ClosedFormSolution& sol, double kappa, std::size_t N);

/// Stateless evaluator mapping (step-or-time, state x, filtered drift A_hat)
/// to the optimal exploratory action distribution. All path state lives in
/// the simulator, which keeps Monte Carlo trivially parallel. The evaluator
/// only ever receives the filtered drift, never the latent A itself.
class ExploratoryPolicy {
public:
    /// Discrete mode (Prop.-2.1-style): location = classical feedback
    /// control, sigma2 = lambda / (2 qfactor_n), psi from the normalizer.
    static ExploratoryPolicy discrete(LQCoefficients coeffs, BackwardSolution solution,
                                      EntropyIndex q, double lambda, double kappa);

    /// Continuous mode: location = (gamma h1_t + (2 gamma h2_t + D) x)/(2K),
    /// sigma2 = lambda / (2K).
    static ExploratoryPolicy continuous(ClosedFormSolution solution, EntropyIndex q,
                                        double lambda, double kappa);

    bool is_discrete() const noexcept { return discrete_.has_value(); }
    const EntropyIndex& q() const noexcept { return q_; }
    double lambda() const noexcept { return lambda_; }
    double kappa() const noexcept { return kappa_; }
    const LQCoefficients& coeffs() const;
    const BackwardSolution& solution() const;

    /// Distribution at grid step n (discrete mode), 0 <= n <= N-1.
    QGaussianDist at_step(std::size_t n, double x, double a_hat) const;
    /// Distribution at time t (continuous mode), 0 <= t <= T.
    QGaussianDist at_time(double t, double x, double a_hat) const;

    /// Location parameter only (the classical control); exactly the mean of
    /// the distribution the calls above return, through the same arithmetic.
    double location_at_step(std::size_t n, double x, double a_hat) const;
    double location_at_time(double t, double x, double a_hat) const;

private:
    ExploratoryPolicy(EntropyIndex q, double lambda, double kappa)
        : q_(q), lambda_(lambda), kappa_(kappa) {}

    struct DiscreteData {
        LQCoefficients coeffs;
        BackwardSolution solution;
    };

    EntropyIndex q_;
    double lambda_;
    double kappa_;
    std::optional<DiscreteData> discrete_;
    std::optional<ClosedFormSolution> continuous_;
};

/// Outcome of the brute-force pointwise optimality check: the per-step
/// objective L E[nu] - qfactor E[nu^2] + lambda S_q[pi], evaluated by
/// trapezoid quadrature on a common grid, for the policy's distribution and
/// for a family of perturbed densities (location shifts, scale multiples,
/// asymmetric mixtures).
struct OptimalityReport {
    double objective_star = 0.0;     // grid objective of the returned distribution
    double best_challenger = 0.0;    // best grid objective among perturbations
    double margin = 0.0;             // objective_star - best_challenger
    std::size_t candidates = 0;
    std::size_t grid_nodes = 0;
};

/// Evaluates the report at one (n or t, x, a_hat) point with `candidates`
/// perturbed densities on a 2001-node grid spanning +-6 scale units around
/// the location. Deterministic for a given salt.
OptimalityReport verify_pointwise_optimality(const ExploratoryPolicy& pol, double n_or_t,
                                             double x, double a_hat, std::size_t candidates,
                                             std::uint64_t salt = 0);

}  // namespace qsc
