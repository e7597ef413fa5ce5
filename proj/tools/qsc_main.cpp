// Batch entry point: parses an experiment config, dispatches to the solvers,
// simulator, or MDP machinery, and writes CSV artifacts plus a reproducibility
// manifest into the output directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "qsc/config.hpp"
#include "qsc/csv.hpp"
#include "qsc/errors.hpp"
#include "qsc/manifest.hpp"
#include "qsc/policy.hpp"
#include "qsc/qlearn.hpp"
#include "qsc/quadrature.hpp"
#include "qsc/sim.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    bool threads_given = false;
};

std::string to_hex(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

qsc::KeyValueConfig load_config(const CliOptions& opt) {
    qsc::KeyValueConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw qsc::ConfigError(opt.config_path, "cannot open config file");
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        if (qsc::looks_like_manifest(text)) {
            cfg = qsc::KeyValueConfig::parse_text(
                qsc::RunManifest::from_json(text).resolved_config);
        } else {
            cfg = qsc::KeyValueConfig::parse_text(text);
        }
    }
    if (const char* env = std::getenv("QSC_SET")) {
        std::string item;
        std::istringstream ss(env);
        while (std::getline(ss, item, ';')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw qsc::ConfigError("QSC_SET", "expected key=value, got '" + item + "'");
            }
            cfg.set(item.substr(0, eq), item.substr(eq + 1));
        }
    }
    for (const std::string& item : opt.sets) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw qsc::ConfigError("--set", "expected key=value, got '" + item + "'");
        }
        cfg.set(item.substr(0, eq), item.substr(eq + 1));
    }
    if (opt.seed_given) cfg.set("run.seed", std::to_string(opt.seed));
    if (opt.threads_given) cfg.set("run.threads", std::to_string(opt.threads));
    return cfg;
}

class ArtifactWriter {
public:
    ArtifactWriter(std::string out_dir, qsc::RunManifest& manifest)
        : out_dir_(std::move(out_dir)), manifest_(manifest) {
        std::filesystem::create_directories(out_dir_);
    }

    template <typename Fn>
    void write(const std::string& name, Fn&& emit) {
        const std::string path = out_dir_ + "/" + name;
        std::ostringstream buf;
        emit(buf);
        const std::string text = buf.str();
        std::ofstream out(path, std::ios::binary);
        out << text;
        out.close();
        manifest_.outputs.push_back(
            {name, "fnv1a64:" + to_hex(qsc::fnv1a64(text)), text.size()});
    }

    const std::string& dir() const { return out_dir_; }

private:
    std::string out_dir_;
    qsc::RunManifest& manifest_;
};

int run_solve(const qsc::KeyValueConfig& cfg, ArtifactWriter& writer) {
    const qsc::ExperimentConfig exp = qsc::experiment_from_config(cfg);
    for (std::size_t N : exp.Ns) {
        const qsc::LQCoefficients coeffs = exp.model.lq(N);
        const qsc::BackwardSolution sol = qsc::solve_backward(coeffs, exp.model.kappa);
        writer.write("backward_N" + std::to_string(N) + ".csv",
                     [&](std::ostream& out) { qsc::write_backward_csv(out, coeffs, sol); });
    }
    const qsc::ClosedFormSolution closed = exp.model.closed_form();
    writer.write("closed_form.csv", [&](std::ostream& out) {
        qsc::write_closed_form_csv(out, closed, exp.model.kappa, 1000);
    });
    std::cout << "solve: wrote backward tables for " << exp.Ns.size()
              << " grid(s) and the closed form\n";
    return 0;
}

int run_simulate(const qsc::KeyValueConfig& cfg, ArtifactWriter& writer) {
    const qsc::ExperimentConfig exp = qsc::experiment_from_config(cfg);
    const std::vector<qsc::PathRecord> records = qsc::simulate_paths(exp);
    writer.write("paths.csv",
                 [&](std::ostream& out) { qsc::write_paths_csv(out, records); });
    std::cout << "simulate: " << records.size() << " paths (" << qsc::to_string(exp.mode)
              << ")\n";
    return 0;
}

int run_converge(const qsc::KeyValueConfig& cfg, ArtifactWriter& writer) {
    const qsc::ExperimentConfig exp = qsc::experiment_from_config(cfg);
    const std::vector<qsc::ConvergenceRow> rows = qsc::convergence_study(exp);
    writer.write("convergence.csv",
                 [&](std::ostream& out) { qsc::write_convergence_csv(out, rows); });
    for (const qsc::ConvergenceRow& row : rows) {
        std::cout << "converge: q=" << row.q << " lambda=" << row.lambda << " N=" << row.N
                  << " median_sup_err=" << row.median_sup_err << "\n";
    }
    return 0;
}

int run_approx(const qsc::KeyValueConfig& cfg, ArtifactWriter& writer) {
    const qsc::ExperimentConfig exp = qsc::experiment_from_config(cfg);
    const qsc::ApproxStudy study = qsc::approximation_study(exp);
    writer.write("approx_profile.csv",
                 [&](std::ostream& out) { qsc::write_approx_csv(out, study.profile); });
    writer.write("approx_paths.csv",
                 [&](std::ostream& out) { qsc::write_paths_csv(out, study.sample_paths); });
    std::cout << "approx: profile rows " << study.profile.size() << "\n";
    return 0;
}

int run_qlearn(const qsc::KeyValueConfig& cfg, ArtifactWriter& writer) {
    const qsc::QlearnConfig qc = qsc::qlearn_from_config(cfg);
    if (qc.mdp_file.empty()) {
        throw qsc::ConfigError("qlearn.mdp", "path to an MDP file is required");
    }
    const qsc::TabularMDP mdp = qsc::TabularMDP::load_file(qc.mdp_file);
    const qsc::EntropyIndex q(qc.q);
    const qsc::SoftQTable table =
        qsc::soft_value_iteration(mdp, q, qc.lambda, qc.tol, qc.max_iters);
    const std::vector<qsc::StatePolicyReport> reports =
        qsc::policy_entropy_report(table, q, qc.lambda);
    writer.write("qtable.csv",
                 [&](std::ostream& out) { qsc::write_qtable_csv(out, table, reports); });
    writer.write("policy_report.csv", [&](std::ostream& out) {
        qsc::write_policy_report_csv(out, table, reports);
    });
    std::cout << "qlearn: converged in " << table.iterations
              << " iterations (residual " << table.residual << ")\n";
    return 0;
}

int run_verify(const qsc::KeyValueConfig& cfg, ArtifactWriter& writer) {
    const qsc::ExperimentConfig exp = qsc::experiment_from_config(cfg);
    int failures = 0;
    std::ostringstream report;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS" : "FAIL") << ": " << name << " (" << detail << ")\n";
        report << (ok ? "PASS," : "FAIL,") << name << ',' << detail << '\n';
        if (!ok) ++failures;
    };

    // density normalization across the branch structure
    double worst_norm = 0.0;
    for (double q : {0.5, 0.9, 1.0, 1.5, 2.0, 4.0}) {
        for (double lambda : {0.1, 1.0}) {
            for (double qf : {0.1, 1.0}) {
                const qsc::QGaussianDist dist(qsc::EntropyIndex(q), 0.0, lambda, qf);
                auto f = [&](double nu) { return dist.pdf(nu); };
                const double mass =
                    qsc::EntropyIndex(q).compact_support()
                        ? qsc::integrate_adaptive(f, -dist.scale(), dist.scale(), 1e-12).value
                        : qsc::integrate_real_line(f, 0.0, dist.scale(), 1e-12).value;
                worst_norm = std::max(worst_norm, std::fabs(mass - 1.0));
            }
        }
    }
    check("density normalization", worst_norm < 1e-8,
          "max |mass-1| = " + qsc::format_double(worst_norm));

    // sampler agreement with the quadrature CDF (KS)
    double worst_ks = 0.0;
    for (double q : {0.5, 1.0, 2.0}) {
        const qsc::QGaussianDist dist(qsc::EntropyIndex(q), 0.0, 0.5, 0.1);
        qsc::CounterRng rng(exp.seed, 17, qsc::RngChannel::Generic);
        const std::size_t n = 20000;
        std::vector<double> draws(n);
        for (double& d : draws) d = dist.sample(rng);
        std::sort(draws.begin(), draws.end());
        double ks = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double F = dist.cdf(draws[i]);
            ks = std::max(ks, std::fabs(F - static_cast<double>(i) / n));
            ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - F));
        }
        worst_ks = std::max(worst_ks, ks);
    }
    check("sampler KS", worst_ks < 0.015, "max KS = " + qsc::format_double(worst_ks));

    // pointwise optimality of the exploratory policy
    const std::size_t N = exp.Ns.front();
    const qsc::LQCoefficients coeffs = exp.model.lq(N);
    const qsc::BackwardSolution sol = qsc::solve_backward(coeffs, exp.model.kappa);
    double worst_margin = std::numeric_limits<double>::infinity();
    for (double q : exp.qs) {
        const qsc::ExploratoryPolicy pol = qsc::ExploratoryPolicy::discrete(
            coeffs, sol, qsc::EntropyIndex(q), exp.lambdas.front(), exp.model.kappa);
        qsc::CounterRng rng(exp.seed, 3, qsc::RngChannel::Generic);
        for (int rep = 0; rep < 5; ++rep) {
            const auto n = static_cast<std::size_t>(rng.next_u01() * static_cast<double>(N));
            const double x = 4.0 * rng.next_u01() - 2.0;
            const double a_hat = 4.0 * rng.next_u01() - 2.0;
            const qsc::OptimalityReport rpt = qsc::verify_pointwise_optimality(
                pol, static_cast<double>(std::min(n, N - 1)), x, a_hat, 60, exp.seed + rep);
            worst_margin = std::min(worst_margin, rpt.margin);
        }
    }
    check("pointwise optimality", worst_margin > 0.0,
          "min margin = " + qsc::format_double(worst_margin));

    writer.write("verify.csv", [&](std::ostream& out) {
        out << "status,check,detail\n" << report.str();
    });
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy-regularized exploratory LQ control: solvers, simulator, soft-Q tools"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "config file (key=value sections or a manifest)");
    app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", opt.seed, "override run.seed");
    auto* threads_opt = app.add_option("--threads", opt.threads, "cap worker threads");
    app.add_option("--set", opt.sets, "override a config key (dotted path), repeatable");

    const std::vector<std::pair<std::string, int (*)(const qsc::KeyValueConfig&, ArtifactWriter&)>>
        subcommands = {
            {"solve", run_solve},       {"simulate", run_simulate}, {"converge", run_converge},
            {"approx", run_approx},     {"qlearn", run_qlearn},     {"verify", run_verify},
        };
    for (const auto& [name, fn] : subcommands) {
        app.add_subcommand(name)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    opt.seed_given = seed_opt->count() > 0;
    opt.threads_given = threads_opt->count() > 0;

    const std::string chosen = app.get_subcommands().front()->get_name();
    const auto start = Clock::now();
    try {
        const qsc::KeyValueConfig cfg = load_config(opt);
        qsc::validate_config_keys(cfg);

        qsc::RunManifest manifest;
        manifest.subcommand = chosen;
        manifest.resolved_config = cfg.resolved_text();
        manifest.config_hash = "fnv1a64:" + to_hex(qsc::fnv1a64(manifest.resolved_config));
        manifest.seed = cfg.get_uint("run.seed", 1);

        ArtifactWriter writer(opt.out_dir, manifest);
        int rc = 1;
        for (const auto& [name, fn] : subcommands) {
            if (name == chosen) {
                rc = fn(cfg, writer);
                break;
            }
        }
        manifest.timings_ms["total"] = ms_since(start);
        std::ofstream mout(writer.dir() + "/manifest.json", std::ios::binary);
        mout << manifest.to_json();
        return rc;
    } catch (const qsc::ConfigError& err) {
        std::cerr << "error: config: " << err.field() << ": " << err.what() << "\n";
        return 2;
    } catch (const qsc::ConvexityViolation& err) {
        std::cerr << "error: convexity: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
