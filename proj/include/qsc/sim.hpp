#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsc/bsdelta.hpp"
#include "qsc/continuous.hpp"
#include "qsc/ou_filter.hpp"
#include "qsc/policy.hpp"

namespace qsc {

/// How actions are produced along a path. All modes share the latent noise
/// channels; only the sampled modes consume the uniforms channel.
enum class SimMode {
    Exploratory,       // nu ~ pi*_n, sampled by inverse CDF
    Classical,         // nu = classical feedback control
    MeanAction,        // nu = conditional mean of pi*_n (== classical)
    ApproxContinuous,  // nu sampled from the closed-form-substituted policy
};

std::string to_string(SimMode mode);
SimMode parse_sim_mode(const std::string& name);

/// Latent-factor discretization. The paper-euler scheme uses plain Brownian
/// increments eta dW2 and is the default; the exact
/// scheme rescales increments to the exact OU transition variance
/// eta^2 (1 - e^{-2 kappa dt}) / (2 kappa).
enum class LatentScheme { PaperEuler, ExactOU };

std::string to_string(LatentScheme scheme);
LatentScheme parse_latent_scheme(const std::string& name);

/// All scalar coefficients defining one problem instance (constant in time).
struct ModelParams {
    double B = 1.0, C = 1.0, D = 1.0, K = 0.1, gamma = 1.0;  // LQ criterion
    double sigma = 0.2, kappa = 1.0, eta = 2.0;              // latent / observation
    double a0_hat = 0.0, Sigma0 = 1.0;                       // prior on A_0
    double T = 1.0;
    double y0 = 1.0;  // Y_0 = X_0

    LQCoefficients lq(std::size_t N) const;
    OUParams ou() const;
    ClosedFormSolution closed_form() const { return ClosedFormSolution::make(B, C, D, K, gamma, T); }
    void validate() const;
};

struct ExperimentConfig {
    ModelParams model;
    std::vector<double> qs{2.0};
    std::vector<double> lambdas{0.5};
    std::vector<std::size_t> Ns{10};
    std::size_t n_paths = 1;
    std::uint64_t seed = 1;
    SimMode mode = SimMode::Exploratory;
    LatentScheme latent_scheme = LatentScheme::PaperEuler;
    int threads = 1;

    void validate() const;
};

/// One simulated trajectory. X_0 = Y_0 and X_n = Y_n + sum_{i<n} gamma nu_i dt
/// exactly; the filter path is computed from observation increments only.
struct PathRecord {
    std::uint64_t path_id = 0;
    std::uint64_t seed = 0;
    double q = 1.0;
    double lambda = 0.0;
    std::size_t N = 0;
    SimMode mode = SimMode::Exploratory;
    std::vector<double> t;      // N+1
    std::vector<double> A;      // N+1 latent drift (recorded, never fed to the policy)
    std::vector<double> Y;      // N+1
    std::vector<double> A_hat;  // N+1
    std::vector<double> X;      // N+1
    std::vector<double> nu;     // N realized actions
};

/// Simulates n_paths trajectories for every (q, lambda, N) combination in
/// the config. Deterministic per (seed, path index): the same key yields the
/// same latent draws in every mode and combination, independent of thread
/// count (counter-based streams, one per path and channel).
std::vector<PathRecord> simulate_paths(const ExperimentConfig& cfg);

/// Raw criterion of one realized path:
/// -B X_N^2 + sum_n (D_n X_n nu_n - C_n X_n^2 - K_n nu_n^2) dt.
double standard_objective(const PathRecord& rec, const LQCoefficients& coeffs);

/// Deterministic entropy accounting of the optimal exploratory policy:
/// lambda sum_n S_q[pi*_n] dt. Depends on the backward solution only (the
/// per-step densities shift with the state but their entropy does not).
double entropy_bonus(const LQCoefficients& coeffs, const BackwardSolution& sol, EntropyIndex q,
                     double lambda);

/// Sup-norm deviation statistics between exploratory discrete paths and the
/// continuous-time classical path, per (q, lambda, N). All grids of one path
/// share a single Brownian outcome: increments are drawn once on the finest
/// grid (max N, which every listed N must divide) and partial-summed onto
/// the coarser ones, so refinement compares the same omega.
struct ConvergenceRow {
    double q = 0.0;
    double lambda = 0.0;
    std::size_t N = 0;
    double median_sup_err = 0.0;
    double p90_sup_err = 0.0;
};

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg);

/// Pairs the discrete optimal policy with the closed-form-substituted
/// approximation under fully common randomness (same latent draws and the
/// same per-step uniforms) and tabulates X^{pi*} - X^{pi~} per step.
struct ApproxRow {
    double q = 0.0;
    double lambda = 0.0;
    std::size_t N = 0;
    std::size_t n = 0;
    double t = 0.0;
    double mean_abs_diff = 0.0;
    double mean_diff = 0.0;
};

struct ApproxStudy {
    std::vector<ApproxRow> profile;
    std::vector<PathRecord> sample_paths;  // first path per combo, both strategies
};

ApproxStudy approximation_study(const ExperimentConfig& cfg);

}  // namespace qsc
