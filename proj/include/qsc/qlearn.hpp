#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qsc/qgaussian.hpp"
#include "qsc/rng.hpp"

namespace qsc {

/// Finite MDP with transition kernel P(x'|x,a), rewards r(x,a,x') and a
/// discount strictly inside (0,1). Every (x,a) row of P must sum to 1
/// within 1e-12.
struct TabularMDP {
    std::size_t n_states = 0;
    std::size_t n_actions = 0;
    std::vector<double> P;  // [x * n_actions * n_states + a * n_states + x']
    std::vector<double> r;  // same layout
    double zeta = 0.9;

    double prob(std::size_t x, std::size_t a, std::size_t xp) const {
        return P[(x * n_actions + a) * n_states + xp];
    }
    double& prob(std::size_t x, std::size_t a, std::size_t xp) {
        return P[(x * n_actions + a) * n_states + xp];
    }
    double reward(std::size_t x, std::size_t a, std::size_t xp) const {
        return r[(x * n_actions + a) * n_states + xp];
    }
    double& reward(std::size_t x, std::size_t a, std::size_t xp) {
        return r[(x * n_actions + a) * n_states + xp];
    }

    void validate() const;

    /// Text format: a header line "n_states n_actions discount" followed by
    /// one "x a x' prob reward" tuple per line (unlisted transitions have
    /// probability zero). '#' starts a comment. Rejects non-stochastic rows.
    static TabularMDP load(std::istream& in);
    static TabularMDP load_file(const std::string& path);
};

/// The optimal Tsallis-regularized distribution over actions for one row of
/// soft Q-values:
///
///   q > 1    pi_a = ((q-1)/(lambda q))^{1/(q-1)} [psi + Q_a]_+^{1/(q-1)}  (may hit exact zeros)
///   q = 1    pi   = softmax(Q / lambda)
///   q < 1    pi_a = ((1-q)/(lambda q))^{1/(q-1)} [psi - Q_a]^{1/(q-1)}    (always full support)
///
/// with psi found by safeguarded bisection so the probabilities sum to 1
/// (tolerance 1e-13 on the sum; the sum is continuous and strictly monotone
/// in psi).
std::vector<double> tsallis_policy(std::span<const double> qrow, EntropyIndex q, double lambda);

struct SoftQTable {
    std::vector<double> Q;  // [x * n_actions + a], the Q(x; delta_a) values
    std::vector<double> V;  // regularized value per state
    std::size_t n_states = 0;
    std::size_t n_actions = 0;
    std::size_t iterations = 0;
    double residual = 0.0;

    double q_value(std::size_t x, std::size_t a) const { return Q[x * n_actions + a]; }
    std::span<const double> row(std::size_t x) const {
        return {Q.data() + x * n_actions, n_actions};
    }
};

/// Entropy-regularized value iteration on the known model:
///   Q(x,a) <- sum_x' P(x'|x,a) (r + zeta V(x')),
///   V(x)   <- sum_a Q(x,a) pi*(a|x) + lambda S_q[pi*(.|x)],  pi* = tsallis_policy.
/// Synchronous sweeps; stops when the sup-norm change of V drops below tol.
/// Throws NonConvergence (with the residual) when max_iters is exhausted.
SoftQTable soft_value_iteration(const TabularMDP& mdp, EntropyIndex q, double lambda, double tol,
                                std::size_t max_iters);

/// Per-state diagnostics of the converged policy.
struct StatePolicyReport {
    std::size_t state = 0;
    std::size_t support_size = 0;
    double entropy = 0.0;
    bool greedy_agreement = false;  // mode of pi* is an argmax of the Q row
    std::vector<double> pi;
};

std::vector<StatePolicyReport> policy_entropy_report(const SoftQTable& table, EntropyIndex q,
                                                     double lambda);

/// Sample-based tabular soft Q-learning: transitions drawn from the model,
/// actions drawn from the current tsallis_policy (exploration comes from the
/// policy itself; no epsilon schedule), learning rate 1/visit-count.
SoftQTable soft_q_learning(const TabularMDP& mdp, EntropyIndex q, double lambda,
                           std::size_t steps, std::uint64_t seed);

}  // namespace qsc
