#pragma once

#include <cmath>
#include <memory>
#include <span>

#include "qsc/rng.hpp"

namespace qsc {

namespace detail {
class StandardQGaussian;
}

/// Tsallis entropy index q. q = 1 (within 1e-9) is the exact Shannon branch,
/// never a numerical limit. Continuous-policy formulas require q > 1/3 so the
/// optimal densities have finite variance; the discrete-MDP entropy only
/// needs q > 0.
struct EntropyIndex {
    double value;

    explicit EntropyIndex(double q_value);

    bool is_shannon() const { return std::fabs(value - 1.0) < 1e-9; }
    bool compact_support() const { return value > 1.0 && !is_shannon(); }
};

/// Discrete Tsallis entropy of a probability vector:
/// (1 - sum pi^q) / (q - 1) for q != 1, and -sum pi log pi for q = 1
/// (with 0 log 0 := 0). Weights must be nonnegative and sum to 1 within
/// 1e-12, otherwise InvalidDistribution is thrown.
double tsallis_entropy_discrete(std::span<const double> weights, EntropyIndex q);

/// Normalizing constant psi of the optimal exploratory density, from the
/// closed Gamma-function expressions (two branches: q > 1 and 1/3 < q < 1).
/// `qfactor` is the quadratic action penalty: K_n - h2_{n+1} gamma_n^2 dt in
/// discrete time, K_t in continuous time. Rejects q = 1 (that branch has an
/// explicit Gaussian normalizer and no psi). Throws ConvexityViolation when
/// qfactor <= 0. Falls back to solving the normalization equation by
/// bisection if the Gamma expressions misbehave numerically.
double normalizer_psi(EntropyIndex q, double lambda, double qfactor);

/// A member of the q-Gaussian family: the optimal exploratory action
/// distribution. Three branches:
///
///   q > 1        compact support |nu - mu| <= sqrt(psi / qfactor),
///                density  c (psi - qfactor (nu-mu)^2)_+^{1/(q-1)}
///   q = 1        Gaussian(mu, sigma2)
///   1/3 < q < 1  full support with power tails,
///                density  c (psi + qfactor (nu-mu)^2)^{1/(q-1)}
///
/// with sigma2 = lambda / (2 qfactor). Immutable after construction and safe
/// to share across threads; sampling takes an explicit caller-owned stream.
class QGaussianDist {
public:
    QGaussianDist(EntropyIndex q, double mu, double lambda, double qfactor);

    const EntropyIndex& q() const noexcept { return q_; }
    double mu() const noexcept { return mu_; }
    double lambda() const noexcept { return lambda_; }
    double qfactor() const noexcept { return qfactor_; }
    double sigma2() const noexcept { return sigma2_; }
    /// Normalizer psi; NaN on the q = 1 branch (not part of that formula).
    double psi() const noexcept { return psi_; }
    /// sqrt(psi/qfactor) for q != 1 (support half-width when q > 1, tail
    /// scale when q < 1); sqrt(sigma2) for q = 1.
    double scale() const noexcept { return scale_; }
    /// +infinity unless q > 1.
    double support_halfwidth() const noexcept;

    double pdf(double nu) const;
    double cdf(double nu) const;
    /// Inverse CDF to within 1e-12 in probability: |F(x) - u| <= 1e-12.
    double quantile(double u) const;
    /// One exact draw; equals quantile(rng.next_u01()).
    double sample(CounterRng& rng) const { return quantile(rng.next_u01()); }

    /// Variance by adaptive quadrature of the defining integral (exactly
    /// sigma2 on the q = 1 branch). Throws NumericalError if divergent.
    double variance() const;

private:
    EntropyIndex q_;
    double mu_;
    double lambda_;
    double qfactor_;
    double sigma2_;
    double psi_;
    double coeff_;  // log density prefactor for q != 1; plain prefactor for q = 1
    double scale_;
    std::shared_ptr<const detail::StandardQGaussian> shape_;  // per-q cache, null for q = 1
};

/// Differential Tsallis entropy S_q of the density, by adaptive quadrature
/// on the support (q = 1: Shannon integral). Throws NumericalError if the
/// result is non-finite.
double tsallis_entropy_continuous(const QGaussianDist& dist);

}  // namespace qsc
