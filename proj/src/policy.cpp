#include "qsc/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/rng.hpp"

namespace qsc {

BackwardSolution closed_form_tables(const ClosedFormSolution& sol, double kappa, std::size_t N) {
    if (N == 0) throw InvalidGrid("closed_form_tables requires N >= 1");
    const double dt = sol.T / static_cast<double>(N);
    BackwardSolution tables;
    tables.h2.resize(N + 1);
    tables.phi.resize(N + 1);
    tables.qfactor.resize(N);
    for (std::size_t n = 0; n <= N; ++n) {
        const double t = dt * static_cast<double>(n);
        tables.h2[n] = h2_closed(t, sol);
        tables.phi[n] = h1_coefficient(t, sol, kappa);
    }
    for (std::size_t n = 0; n < N; ++n) {
        const double qf = sol.K - tables.h2[n + 1] * sol.gamma * sol.gamma * dt;
        if (!(qf > 0.0)) throw ConvexityViolation(n, qf);
        tables.qfactor[n] = qf;
    }
    return tables;
}

ExploratoryPolicy ExploratoryPolicy::discrete(LQCoefficients coeffs, BackwardSolution solution,
                                              EntropyIndex q, double lambda, double kappa) {
    coeffs.validate();
    if (solution.h2.size() != coeffs.N + 1 || solution.phi.size() != coeffs.N + 1 ||
        solution.qfactor.size() != coeffs.N) {
        throw InvalidGrid("ExploratoryPolicy: solution tables do not match N");
    }
    for (std::size_t n = 0; n < coeffs.N; ++n) {
        if (!(solution.qfactor[n] > 0.0)) throw ConvexityViolation(n, solution.qfactor[n]);
    }
    ExploratoryPolicy pol(q, lambda, kappa);
    pol.discrete_ = DiscreteData{std::move(coeffs), std::move(solution)};
    return pol;
}

ExploratoryPolicy ExploratoryPolicy::continuous(ClosedFormSolution solution, EntropyIndex q,
                                                double lambda, double kappa) {
    ExploratoryPolicy pol(q, lambda, kappa);
    pol.continuous_ = solution;
    return pol;
}

const LQCoefficients& ExploratoryPolicy::coeffs() const {
    if (!discrete_) throw InvalidGrid("policy is not in discrete mode");
    return discrete_->coeffs;
}

const BackwardSolution& ExploratoryPolicy::solution() const {
    if (!discrete_) throw InvalidGrid("policy is not in discrete mode");
    return discrete_->solution;
}

double ExploratoryPolicy::location_at_step(std::size_t n, double x, double a_hat) const {
    if (!discrete_) throw InvalidGrid("location_at_step requires discrete mode");
    if (n >= discrete_->coeffs.N) {
        throw InvalidGrid("step " + std::to_string(n) + " out of range");
    }
    return classical_control(n, x, a_hat, discrete_->solution, discrete_->coeffs, kappa_);
}

double ExploratoryPolicy::location_at_time(double t, double x, double a_hat) const {
    if (!continuous_) throw InvalidGrid("location_at_time requires continuous mode");
    const ClosedFormSolution& sol = *continuous_;
    const double h1 = h1_closed(t, a_hat, sol, kappa_);
    const double h2 = h2_closed(t, sol);
    return (sol.gamma * h1 + (2.0 * sol.gamma * h2 + sol.D) * x) / (2.0 * sol.K);
}

QGaussianDist ExploratoryPolicy::at_step(std::size_t n, double x, double a_hat) const {
    const double mu = location_at_step(n, x, a_hat);
    return QGaussianDist(q_, mu, lambda_, discrete_->solution.qfactor[n]);
}

QGaussianDist ExploratoryPolicy::at_time(double t, double x, double a_hat) const {
    const double mu = location_at_time(t, x, a_hat);
    return QGaussianDist(q_, mu, lambda_, continuous_->K);
}

namespace {

// Grid objective: sum w_i (L nu_i - Q nu_i^2) pi_i + lambda S_q[pi], with pi
// renormalized on the grid so all candidates compare under the same measure.
double grid_objective(const std::vector<double>& nu, const std::vector<double>& w,
                      std::vector<double> pi, double L, double Q, const EntropyIndex& q,
                      double lambda) {
    double mass = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) mass += w[i] * pi[i];
    if (!(mass > 0.0)) return -std::numeric_limits<double>::infinity();
    double raw = 0.0;
    double entropy = 0.0;
    const bool shannon = q.is_shannon();
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double p = pi[i] / mass;
        raw += w[i] * (L * nu[i] - Q * nu[i] * nu[i]) * p;
        if (shannon) {
            if (p > 0.0) entropy -= w[i] * p * std::log(p);
        } else {
            entropy += w[i] * std::pow(p, q.value);
        }
    }
    if (!shannon) entropy = (1.0 - entropy) / (q.value - 1.0);
    return raw + lambda * entropy;
}

}  // namespace

OptimalityReport verify_pointwise_optimality(const ExploratoryPolicy& pol, double n_or_t,
                                             double x, double a_hat, std::size_t candidates,
                                             std::uint64_t salt) {
    const QGaussianDist dist =
        pol.is_discrete() ? pol.at_step(static_cast<std::size_t>(n_or_t), x, a_hat)
                          : pol.at_time(n_or_t, x, a_hat);
    const double Q = dist.qfactor();
    const double L = 2.0 * Q * dist.mu();

    constexpr std::size_t kNodes = 2001;
    std::vector<double> nu(kNodes), w(kNodes);
    if (dist.q().value >= 1.0) {
        // +-6 scale units covers the entire support (q > 1) or all but
        // ~1e-9 Gaussian mass (q = 1)
        const double span = 6.0 * std::max(dist.scale(), std::sqrt(dist.sigma2()));
        const double lo = dist.mu() - span;
        const double step = 2.0 * span / static_cast<double>(kNodes - 1);
        for (std::size_t i = 0; i < kNodes; ++i) {
            nu[i] = lo + step * static_cast<double>(i);
            w[i] = (i == 0 || i == kNodes - 1) ? 0.5 * step : step;  // trapezoid weights
        }
    } else {
        // power tails: a linear window clips enough entropy mass to bias the
        // comparison, so compactify with nu = mu + scale tan(theta)
        const double theta_max = std::numbers::pi / 2.0 - 1e-4;
        const double step = 2.0 * theta_max / static_cast<double>(kNodes - 1);
        for (std::size_t i = 0; i < kNodes; ++i) {
            const double theta = -theta_max + step * static_cast<double>(i);
            const double t = std::tan(theta);
            nu[i] = dist.mu() + dist.scale() * t;
            const double jac = dist.scale() * (1.0 + t * t);
            w[i] = ((i == 0 || i == kNodes - 1) ? 0.5 * step : step) * jac;
        }
    }

    std::vector<double> star(kNodes);
    for (std::size_t i = 0; i < kNodes; ++i) star[i] = dist.pdf(nu[i]);
    OptimalityReport report;
    report.grid_nodes = kNodes;
    report.candidates = candidates;
    report.objective_star = grid_objective(nu, w, star, L, Q, pol.q(), pol.lambda());
    report.best_challenger = -std::numeric_limits<double>::infinity();

    // Perturbation magnitudes are bounded away from zero so every challenger
    // is a genuinely different density, not the optimum plus rounding.
    CounterRng rng(salt, 0, RngChannel::Generic);
    const double s = dist.scale();
    for (std::size_t c = 0; c < candidates; ++c) {
        std::vector<double> cand(kNodes);
        switch (c % 3) {
            case 0: {  // location shift, |delta| in [0.1, 2] scale units
                const double mag = (0.1 + 1.9 * rng.next_u01()) * s;
                const double delta = (rng.next_u01() < 0.5) ? -mag : mag;
                for (std::size_t i = 0; i < kNodes; ++i) cand[i] = dist.pdf(nu[i] - delta);
                break;
            }
            case 1: {  // scale multiple in [0.4, 0.9] or [1.1, 2.2]
                const double u = rng.next_u01();
                const double factor = (u < 0.5) ? 0.4 + u : 1.1 + 1.1 * (u - 0.5) * 2.0;
                for (std::size_t i = 0; i < kNodes; ++i) {
                    cand[i] = dist.pdf(dist.mu() + (nu[i] - dist.mu()) / factor) / factor;
                }
                break;
            }
            default: {  // asymmetric two-bump mixture with separated bumps
                const double wgt = 0.2 + 0.6 * rng.next_u01();
                const double d1 = (0.2 + 1.3 * rng.next_u01()) * s;
                const double d2 = (0.2 + 1.3 * rng.next_u01()) * s;
                for (std::size_t i = 0; i < kNodes; ++i) {
                    cand[i] = wgt * dist.pdf(nu[i] - d1) + (1.0 - wgt) * dist.pdf(nu[i] + d2);
                }
                break;
            }
        }
        report.best_challenger =
            std::max(report.best_challenger,
                     grid_objective(nu, w, std::move(cand), L, Q, pol.q(), pol.lambda()));
    }
    report.margin = report.objective_star - report.best_challenger;
    return report;
}

}  // namespace qsc
