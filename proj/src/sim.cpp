#include "qsc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsc/errors.hpp"
#include "qsc/parallel.hpp"
#include "qsc/rng.hpp"

namespace qsc {

std::string to_string(SimMode mode) {
    switch (mode) {
        case SimMode::Exploratory: return "exploratory";
        case SimMode::Classical: return "classical";
        case SimMode::MeanAction: return "mean-action";
        case SimMode::ApproxContinuous: return "approx-continuous";
    }
    return "unknown";
}

SimMode parse_sim_mode(const std::string& name) {
    if (name == "exploratory") return SimMode::Exploratory;
    if (name == "classical") return SimMode::Classical;
    if (name == "mean-action") return SimMode::MeanAction;
    if (name == "approx-continuous") return SimMode::ApproxContinuous;
    throw ConfigError("run.mode", "unknown mode '" + name + "'");
}

std::string to_string(LatentScheme scheme) {
    return scheme == LatentScheme::PaperEuler ? "paper-euler" : "exact";
}

LatentScheme parse_latent_scheme(const std::string& name) {
    if (name == "paper-euler") return LatentScheme::PaperEuler;
    if (name == "exact") return LatentScheme::ExactOU;
    throw ConfigError("run.latent_scheme", "unknown latent scheme '" + name + "'");
}

LQCoefficients ModelParams::lq(std::size_t N) const {
    return LQCoefficients::constant(B, C, D, K, gamma, T, N);
}

OUParams ModelParams::ou() const {
    OUParams p;
    p.kappa = kappa;
    p.eta = eta;
    p.sigma = sigma;
    p.A0_mean = a0_hat;
    p.Sigma0 = Sigma0;
    return p;
}

void ModelParams::validate() const {
    ou().validate();
    if (!(T > 0.0)) throw NumericalError("ModelParams: T must be > 0");
    if (!(K > 0.0)) throw NumericalError("ModelParams: K must be > 0");
    if (!(B >= 0.0)) throw NumericalError("ModelParams: B must be >= 0");
    if (!std::isfinite(y0)) throw NumericalError("ModelParams: y0 must be finite");
}

void ExperimentConfig::validate() const {
    model.validate();
    if (qs.empty() || lambdas.empty() || Ns.empty()) {
        throw NumericalError("ExperimentConfig: q/lambda/N lists must be nonempty");
    }
    if (n_paths < 1) throw NumericalError("ExperimentConfig: n_paths must be >= 1");
    for (double q : qs) EntropyIndex{q};
    for (double l : lambdas) {
        if (!(l > 0.0)) throw NumericalError("ExperimentConfig: lambdas must be > 0");
    }
    for (std::size_t n : Ns) {
        if (n == 0) throw InvalidGrid("ExperimentConfig: N must be >= 1");
    }
}

namespace {

// Brownian outcome of one path: a standard normal for A_0 plus per-step
// increments (already carrying their sqrt(dt) scaling) for W1 and W2.
struct DrivingNoise {
    double z0 = 0.0;
    std::vector<double> dW1;
    std::vector<double> dW2;
};

DrivingNoise draw_noise(std::uint64_t seed, std::uint64_t path, std::size_t N, double dt) {
    DrivingNoise noise;
    CounterRng latent(seed, path, RngChannel::LatentA);
    CounterRng w1(seed, path, RngChannel::NoiseW1);
    const double root_dt = std::sqrt(dt);
    noise.z0 = latent.next_normal();
    noise.dW1.resize(N);
    noise.dW2.resize(N);
    for (std::size_t n = 0; n < N; ++n) noise.dW2[n] = root_dt * latent.next_normal();
    for (std::size_t n = 0; n < N; ++n) noise.dW1[n] = root_dt * w1.next_normal();
    return noise;
}

// Partial-sums fine increments onto a coarser grid (factor = N_fine / N).
std::vector<double> aggregate(const std::vector<double>& fine, std::size_t factor) {
    std::vector<double> coarse(fine.size() / factor, 0.0);
    for (std::size_t m = 0; m < coarse.size(); ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i < factor; ++i) acc += fine[m * factor + i];
        coarse[m] = acc;
    }
    return coarse;
}

double latent_step_factor(LatentScheme scheme, double kappa, double dt) {
    if (scheme == LatentScheme::PaperEuler || kappa == 0.0) return 1.0;
    return std::sqrt((1.0 - std::exp(-2.0 * kappa * dt)) / (2.0 * kappa * dt));
}

// The error variance is observation independent, so the filter gains are a
// deterministic per-grid sequence shared by every path of a combination.
// Arithmetic matches filter_step exactly: A_hat' = decay A_hat + g (dY - A_hat dt).
struct FilterGains {
    double decay = 1.0;
    std::vector<double> gain;  // (decay * Sigma_n) / (sigma^2 + Sigma_n dt)

    FilterGains() = default;
    FilterGains(const OUParams& params, std::size_t N, double dt) {
        decay = std::exp(-params.kappa * dt);
        const std::vector<double> sigma = sigma_sequence(params, N, dt);
        gain.resize(N);
        for (std::size_t n = 0; n < N; ++n) {
            gain[n] = decay * sigma[n] / (params.sigma * params.sigma + sigma[n] * dt);
        }
    }
};

// Core path engine. `uniforms` is consumed only by the sampled modes.
PathRecord run_path(const ModelParams& model, const ExploratoryPolicy& policy, SimMode mode,
                    std::size_t N, const DrivingNoise& noise, CounterRng& uniforms,
                    LatentScheme scheme, const FilterGains& filter) {
    const double dt = model.T / static_cast<double>(N);
    const double decay = std::exp(-model.kappa * dt);
    const double step_factor = latent_step_factor(scheme, model.kappa, dt);

    PathRecord rec;
    rec.N = N;
    rec.mode = mode;
    rec.q = policy.q().value;
    rec.lambda = policy.lambda();
    rec.t.resize(N + 1);
    rec.A.resize(N + 1);
    rec.Y.resize(N + 1);
    rec.A_hat.resize(N + 1);
    rec.X.resize(N + 1);
    rec.nu.resize(N);

    rec.A[0] = model.a0_hat + std::sqrt(model.Sigma0) * noise.z0;
    rec.Y[0] = model.y0;
    rec.X[0] = model.y0;
    rec.A_hat[0] = model.a0_hat;

    for (std::size_t n = 0; n <= N; ++n) rec.t[n] = dt * static_cast<double>(n);
    for (std::size_t n = 0; n < N; ++n) {
        double nu;
        switch (mode) {
            case SimMode::Exploratory:
            case SimMode::ApproxContinuous:
                nu = policy.at_step(n, rec.X[n], rec.A_hat[n]).quantile(uniforms.next_u01());
                break;
            case SimMode::Classical:
            case SimMode::MeanAction:
                nu = policy.location_at_step(n, rec.X[n], rec.A_hat[n]);
                break;
            default:
                throw std::logic_error("unhandled mode");
        }
        rec.nu[n] = nu;
        const double dY = rec.A[n] * dt + model.sigma * noise.dW1[n];
        rec.Y[n + 1] = rec.Y[n] + dY;
        rec.X[n + 1] = rec.X[n] + dY + model.gamma * nu * dt;
        rec.A_hat[n + 1] = filter.decay * rec.A_hat[n] +
                           filter.gain[n] * (dY - rec.A_hat[n] * dt);
        rec.A[n + 1] = decay * rec.A[n] + model.eta * step_factor * noise.dW2[n];
    }
    return rec;
}

ExploratoryPolicy build_policy(const ModelParams& model, std::size_t N, double q, double lambda,
                               SimMode mode) {
    const LQCoefficients coeffs = model.lq(N);
    BackwardSolution tables = (mode == SimMode::ApproxContinuous)
                                  ? closed_form_tables(model.closed_form(), model.kappa, N)
                                  : solve_backward(coeffs, model.kappa);
    return ExploratoryPolicy::discrete(coeffs, std::move(tables), EntropyIndex(q), lambda,
                                       model.kappa);
}

}  // namespace

std::vector<PathRecord> simulate_paths(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Combo {
        double q, lambda;
        std::size_t N;
        ExploratoryPolicy policy;
        FilterGains filter;
    };
    std::vector<Combo> combos;
    for (double q : cfg.qs) {
        for (double lambda : cfg.lambdas) {
            for (std::size_t N : cfg.Ns) {
                combos.push_back({q, lambda, N, build_policy(cfg.model, N, q, lambda, cfg.mode),
                                  FilterGains(cfg.model.ou(), N,
                                              cfg.model.T / static_cast<double>(N))});
            }
        }
    }
    std::vector<PathRecord> records(combos.size() * cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t path) {
        for (std::size_t c = 0; c < combos.size(); ++c) {
            const Combo& combo = combos[c];
            const double dt = cfg.model.T / static_cast<double>(combo.N);
            const DrivingNoise noise = draw_noise(cfg.seed, path, combo.N, dt);
            CounterRng uniforms(cfg.seed, path, RngChannel::Uniforms, combo.N);
            PathRecord rec = run_path(cfg.model, combo.policy, cfg.mode, combo.N, noise,
                                      uniforms, cfg.latent_scheme, combo.filter);
            rec.path_id = path;
            rec.seed = cfg.seed;
            records[c * cfg.n_paths + path] = std::move(rec);
        }
    });
    return records;
}

double standard_objective(const PathRecord& rec, const LQCoefficients& coeffs) {
    if (coeffs.N != rec.N) throw InvalidGrid("standard_objective: N mismatch");
    double acc = -coeffs.B * rec.X[rec.N] * rec.X[rec.N];
    for (std::size_t n = 0; n < rec.N; ++n) {
        acc += (coeffs.D[n] * rec.X[n] * rec.nu[n] - coeffs.C[n] * rec.X[n] * rec.X[n] -
                coeffs.K[n] * rec.nu[n] * rec.nu[n]) *
               coeffs.dt;
    }
    return acc;
}

double entropy_bonus(const LQCoefficients& coeffs, const BackwardSolution& sol, EntropyIndex q,
                     double lambda) {
    double acc = 0.0;
    for (std::size_t n = 0; n < coeffs.N; ++n) {
        const QGaussianDist dist(q, 0.0, lambda, sol.qfactor[n]);
        acc += tsallis_entropy_continuous(dist);
    }
    return lambda * acc * coeffs.dt;
}

namespace {

// Deterministic per-step tables of the continuous-time reference: closed
// form h1 coefficient and h2 at the grid times, and the filter gain
// Sigma_t / sigma^2 from the closed-form error variance.
struct ReferenceTables {
    std::vector<double> h1c;
    std::vector<double> h2c;
    std::vector<double> gain;
};

ReferenceTables make_reference_tables(const ModelParams& model, const ClosedFormSolution& sol,
                                      std::size_t N_ref) {
    const double dt = model.T / static_cast<double>(N_ref);
    const double sig2 = model.sigma * model.sigma;
    const OUParams ou = model.ou();
    ReferenceTables tab;
    tab.h1c.resize(N_ref);
    tab.h2c.resize(N_ref);
    tab.gain.resize(N_ref);
    for (std::size_t i = 0; i < N_ref; ++i) {
        const double t = dt * static_cast<double>(i);
        tab.h1c[i] = h1_coefficient(t, sol, model.kappa);
        tab.h2c[i] = h2_closed(t, sol);
        tab.gain[i] = sigma_continuous(t, ou) / sig2;
    }
    return tab;
}

// Classical continuous-time path on the reference grid: closed-form h1/h2
// feedback, continuous filter with the closed-form error variance, Euler in
// time, driven by the same Brownian outcome as the discrete paths.
std::vector<double> reference_path(const ModelParams& model, const ClosedFormSolution& sol,
                                   const ReferenceTables& tab, std::size_t N_ref,
                                   const DrivingNoise& noise, LatentScheme scheme) {
    const double dt = model.T / static_cast<double>(N_ref);
    const double decay = std::exp(-model.kappa * dt);
    const double step_factor = latent_step_factor(scheme, model.kappa, dt);

    std::vector<double> X(N_ref + 1);
    double A = model.a0_hat + std::sqrt(model.Sigma0) * noise.z0;
    double A_hat = model.a0_hat;
    X[0] = model.y0;
    for (std::size_t i = 0; i < N_ref; ++i) {
        const double h1 = tab.h1c[i] * A_hat;
        const double nu = (sol.gamma * h1 + (2.0 * sol.gamma * tab.h2c[i] + sol.D) * X[i]) /
                          (2.0 * sol.K);
        const double dY = A * dt + model.sigma * noise.dW1[i];
        X[i + 1] = X[i] + dY + model.gamma * nu * dt;
        A_hat += -model.kappa * A_hat * dt + tab.gain[i] * (dY - A_hat * dt);
        A = decay * A + model.eta * step_factor * noise.dW2[i];
    }
    return X;
}

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double idx = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t N_ref = *std::max_element(cfg.Ns.begin(), cfg.Ns.end());
    for (std::size_t N : cfg.Ns) {
        if (N_ref % N != 0) {
            throw InvalidGrid("convergence_study: every N must divide the largest N");
        }
    }
    const ClosedFormSolution sol = cfg.model.closed_form();
    const double dt_ref = cfg.model.T / static_cast<double>(N_ref);

    struct Combo {
        double q, lambda;
        std::size_t N;
        ExploratoryPolicy policy;
        FilterGains filter;
    };
    std::vector<Combo> combos;
    for (double q : cfg.qs) {
        for (double lambda : cfg.lambdas) {
            for (std::size_t N : cfg.Ns) {
                combos.push_back(
                    {q, lambda, N, build_policy(cfg.model, N, q, lambda, SimMode::Exploratory),
                     FilterGains(cfg.model.ou(), N, cfg.model.T / static_cast<double>(N))});
            }
        }
    }

    const ReferenceTables ref_tables = make_reference_tables(cfg.model, sol, N_ref);

    // sup-norm deviations per combo, indexed [combo][path]
    std::vector<std::vector<double>> sup_err(combos.size(),
                                             std::vector<double>(cfg.n_paths, 0.0));
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t path) {
        const DrivingNoise fine = draw_noise(cfg.seed, path, N_ref, dt_ref);
        const std::vector<double> X_ref =
            reference_path(cfg.model, sol, ref_tables, N_ref, fine, cfg.latent_scheme);
        for (std::size_t c = 0; c < combos.size(); ++c) {
            const Combo& combo = combos[c];
            const std::size_t factor = N_ref / combo.N;
            DrivingNoise noise;
            noise.z0 = fine.z0;
            noise.dW1 = (factor == 1) ? fine.dW1 : aggregate(fine.dW1, factor);
            noise.dW2 = (factor == 1) ? fine.dW2 : aggregate(fine.dW2, factor);
            CounterRng uniforms(cfg.seed, path, RngChannel::Uniforms, combo.N);
            const PathRecord rec =
                run_path(cfg.model, combo.policy, SimMode::Exploratory, combo.N, noise,
                         uniforms, cfg.latent_scheme, combo.filter);
            double sup = 0.0;
            for (std::size_t n = 0; n <= combo.N; ++n) {
                sup = std::max(sup, std::fabs(rec.X[n] - X_ref[n * factor]));
            }
            sup_err[c][path] = sup;
        }
    });

    std::vector<ConvergenceRow> rows;
    rows.reserve(combos.size());
    for (std::size_t c = 0; c < combos.size(); ++c) {
        ConvergenceRow row;
        row.q = combos[c].q;
        row.lambda = combos[c].lambda;
        row.N = combos[c].N;
        row.median_sup_err = percentile(sup_err[c], 0.5);
        row.p90_sup_err = percentile(sup_err[c], 0.9);
        rows.push_back(row);
    }
    return rows;
}

ApproxStudy approximation_study(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t N_ref = *std::max_element(cfg.Ns.begin(), cfg.Ns.end());
    for (std::size_t N : cfg.Ns) {
        if (N_ref % N != 0) {
            throw InvalidGrid("approximation_study: every N must divide the largest N");
        }
    }
    const double dt_ref = cfg.model.T / static_cast<double>(N_ref);

    struct Combo {
        double q, lambda;
        std::size_t N;
        ExploratoryPolicy optimal;
        ExploratoryPolicy approx;
        FilterGains filter;
    };
    std::vector<Combo> combos;
    for (double q : cfg.qs) {
        for (double lambda : cfg.lambdas) {
            for (std::size_t N : cfg.Ns) {
                combos.push_back({q, lambda, N,
                                  build_policy(cfg.model, N, q, lambda, SimMode::Exploratory),
                                  build_policy(cfg.model, N, q, lambda,
                                               SimMode::ApproxContinuous),
                                  FilterGains(cfg.model.ou(), N,
                                              cfg.model.T / static_cast<double>(N))});
            }
        }
    }

    struct Accum {
        std::vector<double> abs_diff;
        std::vector<double> diff;
    };
    std::vector<std::vector<Accum>> per_path(cfg.n_paths);

    ApproxStudy study;
    std::vector<PathRecord> first_opt(combos.size()), first_approx(combos.size());

    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t path) {
        per_path[path].resize(combos.size());
        const DrivingNoise fine = draw_noise(cfg.seed, path, N_ref, dt_ref);
        for (std::size_t c = 0; c < combos.size(); ++c) {
            const Combo& combo = combos[c];
            const std::size_t factor = N_ref / combo.N;
            DrivingNoise noise;
            noise.z0 = fine.z0;
            noise.dW1 = (factor == 1) ? fine.dW1 : aggregate(fine.dW1, factor);
            noise.dW2 = (factor == 1) ? fine.dW2 : aggregate(fine.dW2, factor);
            // Both strategies replay the same uniforms stream step for step.
            CounterRng u_opt(cfg.seed, path, RngChannel::Uniforms, combo.N);
            CounterRng u_approx(cfg.seed, path, RngChannel::Uniforms, combo.N);
            PathRecord opt = run_path(cfg.model, combo.optimal, SimMode::Exploratory, combo.N,
                                      noise, u_opt, cfg.latent_scheme, combo.filter);
            PathRecord approx =
                run_path(cfg.model, combo.approx, SimMode::ApproxContinuous, combo.N, noise,
                         u_approx, cfg.latent_scheme, combo.filter);
            Accum& acc = per_path[path][c];
            acc.abs_diff.resize(combo.N + 1);
            acc.diff.resize(combo.N + 1);
            for (std::size_t n = 0; n <= combo.N; ++n) {
                const double d = opt.X[n] - approx.X[n];
                acc.abs_diff[n] = std::fabs(d);
                acc.diff[n] = d;
            }
            if (path == 0) {
                opt.path_id = approx.path_id = path;
                opt.seed = approx.seed = cfg.seed;
                first_opt[c] = std::move(opt);
                first_approx[c] = std::move(approx);
            }
        }
    });

    for (std::size_t c = 0; c < combos.size(); ++c) {
        const Combo& combo = combos[c];
        const double dt = cfg.model.T / static_cast<double>(combo.N);
        for (std::size_t n = 0; n <= combo.N; ++n) {
            ApproxRow row;
            row.q = combo.q;
            row.lambda = combo.lambda;
            row.N = combo.N;
            row.n = n;
            row.t = dt * static_cast<double>(n);
            double sum_abs = 0.0, sum = 0.0;
            for (std::size_t path = 0; path < cfg.n_paths; ++path) {
                sum_abs += per_path[path][c].abs_diff[n];
                sum += per_path[path][c].diff[n];
            }
            row.mean_abs_diff = sum_abs / static_cast<double>(cfg.n_paths);
            row.mean_diff = sum / static_cast<double>(cfg.n_paths);
            study.profile.push_back(row);
        }
        study.sample_paths.push_back(std::move(first_opt[c]));
        study.sample_paths.push_back(std::move(first_approx[c]));
    }
    return study;
}

}  // namespace qsc
