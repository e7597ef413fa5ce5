#include "qsc/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "qsc/errors.hpp"

namespace qsc {

void TabularMDP::validate() const {
    if (n_states == 0 || n_actions == 0) {
        throw InvalidDistribution("TabularMDP: need at least one state and action");
    }
    if (!(zeta > 0.0) || !(zeta < 1.0)) {
        throw InvalidDistribution("TabularMDP: discount must lie strictly in (0,1)");
    }
    const std::size_t expected = n_states * n_actions * n_states;
    if (P.size() != expected || r.size() != expected) {
        throw InvalidDistribution("TabularMDP: kernel/reward size mismatch");
    }
    for (std::size_t x = 0; x < n_states; ++x) {
        for (std::size_t a = 0; a < n_actions; ++a) {
            double sum = 0.0;
            for (std::size_t xp = 0; xp < n_states; ++xp) {
                const double p = prob(x, a, xp);
                if (!(p >= 0.0)) {
                    throw InvalidDistribution("TabularMDP: negative probability at (" +
                                              std::to_string(x) + "," + std::to_string(a) + ")");
                }
                sum += p;
            }
            if (std::fabs(sum - 1.0) > 1e-12) {
                throw InvalidDistribution("TabularMDP: row (" + std::to_string(x) + "," +
                                          std::to_string(a) + ") sums to " +
                                          std::to_string(sum));
            }
        }
    }
}

TabularMDP TabularMDP::load(std::istream& in) {
    TabularMDP mdp;
    std::string line;
    bool header_done = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        if (!header_done) {
            if (!(ss >> mdp.n_states >> mdp.n_actions >> mdp.zeta)) {
                std::string tok;
                std::istringstream probe(line);
                if (probe >> tok) {
                    throw InvalidDistribution("MDP file line " + std::to_string(line_no) +
                                              ": expected 'n_states n_actions discount'");
                }
                continue;  // blank / comment-only line before the header
            }
            mdp.P.assign(mdp.n_states * mdp.n_actions * mdp.n_states, 0.0);
            mdp.r.assign(mdp.n_states * mdp.n_actions * mdp.n_states, 0.0);
            header_done = true;
            continue;
        }
        std::size_t x, a, xp;
        double p, rew;
        if (!(ss >> x >> a >> xp >> p >> rew)) {
            std::string tok;
            std::istringstream probe(line);
            if (probe >> tok) {
                throw InvalidDistribution("MDP file line " + std::to_string(line_no) +
                                          ": expected 'x a x_next prob reward'");
            }
            continue;
        }
        if (x >= mdp.n_states || a >= mdp.n_actions || xp >= mdp.n_states) {
            throw InvalidDistribution("MDP file line " + std::to_string(line_no) +
                                      ": index out of range");
        }
        mdp.prob(x, a, xp) = p;
        mdp.reward(x, a, xp) = rew;
    }
    if (!header_done) throw InvalidDistribution("MDP file: missing header line");
    mdp.validate();
    return mdp;
}

TabularMDP TabularMDP::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidDistribution("cannot open MDP file '" + path + "'");
    return load(in);
}

namespace {

std::vector<double> softmax_policy(std::span<const double> qrow, double lambda) {
    const double top = *std::max_element(qrow.begin(), qrow.end());
    std::vector<double> pi(qrow.size());
    double sum = 0.0;
    for (std::size_t a = 0; a < qrow.size(); ++a) {
        pi[a] = std::exp((qrow[a] - top) / lambda);
        sum += pi[a];
    }
    for (double& p : pi) p /= sum;
    return pi;
}

// Probability masses for a trial psi (q != 1 branches).
void masses_for_psi(std::span<const double> qrow, double q, double lambda, double psi,
                    std::vector<double>& pi) {
    const double p = 1.0 / (q - 1.0);
    if (q > 1.0) {
        const double c = std::pow((q - 1.0) / (lambda * q), p);
        for (std::size_t a = 0; a < qrow.size(); ++a) {
            const double arg = psi + qrow[a];
            pi[a] = arg > 0.0 ? c * std::pow(arg, p) : 0.0;
        }
    } else {
        const double c = std::pow((1.0 - q) / (lambda * q), p);
        for (std::size_t a = 0; a < qrow.size(); ++a) {
            pi[a] = c * std::pow(psi - qrow[a], p);  // psi > max(qrow) guaranteed by caller
        }
    }
}

double mass_sum(const std::vector<double>& pi) {
    double s = 0.0;
    for (double v : pi) s += v;
    return s;
}

}  // namespace

std::vector<double> tsallis_policy(std::span<const double> qrow, EntropyIndex q, double lambda) {
    if (qrow.empty()) throw InvalidDistribution("tsallis_policy: empty Q row");
    for (double v : qrow) {
        if (!std::isfinite(v)) throw NumericalError("tsallis_policy: non-finite Q value");
    }
    if (!(lambda > 0.0)) throw NumericalError("tsallis_policy: lambda must be > 0");
    if (q.is_shannon()) return softmax_policy(qrow, lambda);

    const double qv = q.value;
    const double q_max = *std::max_element(qrow.begin(), qrow.end());
    const double q_min = *std::min_element(qrow.begin(), qrow.end());
    const double m = static_cast<double>(qrow.size());
    std::vector<double> pi(qrow.size());

    // Bracket [lo, hi] with sum(lo) < 1 < sum(hi) for q > 1 (sum increasing
    // in psi), or reversed for q < 1 (sum decreasing, diverging at
    // psi -> max Q from above).
    double lo, hi;
    if (qv > 1.0) {
        lo = -q_max;
        hi = -q_min + (lambda * qv / (qv - 1.0)) * std::pow(m, qv - 1.0);
        masses_for_psi(qrow, qv, lambda, hi, pi);
        for (int i = 0; i < 200 && mass_sum(pi) < 1.0; ++i) {
            hi = q_max + 2.0 * (hi - q_max) + 1.0;
            masses_for_psi(qrow, qv, lambda, hi, pi);
        }
    } else {
        lo = q_max;  // sum -> +infinity here; never evaluated at lo itself
        hi = q_max + std::max(1.0, lambda * qv / (1.0 - qv));
        masses_for_psi(qrow, qv, lambda, hi, pi);
        for (int i = 0; i < 200 && mass_sum(pi) > 1.0; ++i) {
            hi = q_max + 2.0 * (hi - q_max);
            masses_for_psi(qrow, qv, lambda, hi, pi);
        }
    }

    double best_psi = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        masses_for_psi(qrow, qv, lambda, mid, pi);
        const double s = mass_sum(pi);
        best_psi = mid;
        if (std::fabs(s - 1.0) <= 1e-13) break;
        const bool too_small = (qv > 1.0) ? (s < 1.0) : (s > 1.0);
        if (too_small) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::fabs(mid))) {
            break;
        }
    }
    masses_for_psi(qrow, qv, lambda, best_psi, pi);
    const double s = mass_sum(pi);
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw NumericalError("tsallis_policy: normalization failed (sum " + std::to_string(s) +
                             ")");
    }
    for (double& v : pi) v /= s;
    return pi;
}

SoftQTable soft_value_iteration(const TabularMDP& mdp, EntropyIndex q, double lambda, double tol,
                                std::size_t max_iters) {
    mdp.validate();
    if (!(tol > 0.0)) throw NumericalError("soft_value_iteration: tol must be > 0");
    SoftQTable table;
    table.n_states = mdp.n_states;
    table.n_actions = mdp.n_actions;
    table.Q.assign(mdp.n_states * mdp.n_actions, 0.0);
    table.V.assign(mdp.n_states, 0.0);

    std::vector<double> v_next(mdp.n_states, 0.0);
    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        for (std::size_t x = 0; x < mdp.n_states; ++x) {
            for (std::size_t a = 0; a < mdp.n_actions; ++a) {
                double acc = 0.0;
                for (std::size_t xp = 0; xp < mdp.n_states; ++xp) {
                    const double p = mdp.prob(x, a, xp);
                    if (p > 0.0) acc += p * (mdp.reward(x, a, xp) + mdp.zeta * table.V[xp]);
                }
                table.Q[x * mdp.n_actions + a] = acc;
            }
        }
        double residual = 0.0;
        for (std::size_t x = 0; x < mdp.n_states; ++x) {
            const std::vector<double> pi = tsallis_policy(table.row(x), q, lambda);
            double v = lambda * tsallis_entropy_discrete(pi, q);
            for (std::size_t a = 0; a < mdp.n_actions; ++a) {
                v += table.q_value(x, a) * pi[a];
            }
            residual = std::max(residual, std::fabs(v - table.V[x]));
            v_next[x] = v;
        }
        table.V = v_next;
        table.iterations = iter;
        table.residual = residual;
        if (residual < tol) return table;
    }
    throw NonConvergence("soft_value_iteration: max_iters " + std::to_string(max_iters) +
                             " exhausted",
                         table.residual);
}

std::vector<StatePolicyReport> policy_entropy_report(const SoftQTable& table, EntropyIndex q,
                                                     double lambda) {
    std::vector<StatePolicyReport> reports(table.n_states);
    for (std::size_t x = 0; x < table.n_states; ++x) {
        StatePolicyReport& rep = reports[x];
        rep.state = x;
        rep.pi = tsallis_policy(table.row(x), q, lambda);
        rep.entropy = tsallis_entropy_discrete(rep.pi, q);
        for (double p : rep.pi) {
            if (p > 0.0) ++rep.support_size;
        }
        // Ties resolved to the lexicographically smallest index.
        const auto row = table.row(x);
        const std::size_t greedy = static_cast<std::size_t>(
            std::max_element(row.begin(), row.end()) - row.begin());
        const std::size_t mode = static_cast<std::size_t>(
            std::max_element(rep.pi.begin(), rep.pi.end()) - rep.pi.begin());
        rep.greedy_agreement = table.q_value(x, mode) == table.q_value(x, greedy);
    }
    return reports;
}

SoftQTable soft_q_learning(const TabularMDP& mdp, EntropyIndex q, double lambda,
                           std::size_t steps, std::uint64_t seed) {
    mdp.validate();
    SoftQTable table;
    table.n_states = mdp.n_states;
    table.n_actions = mdp.n_actions;
    table.Q.assign(mdp.n_states * mdp.n_actions, 0.0);
    table.V.assign(mdp.n_states, 0.0);
    std::vector<std::size_t> visits(mdp.n_states * mdp.n_actions, 0);

    CounterRng rng(seed, 0, RngChannel::Generic);
    auto draw_index = [&](std::span<const double> weights) {
        const double u = rng.next_u01();
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u <= acc) return i;
        }
        return weights.size() - 1;
    };

    std::size_t x = 0;
    for (std::size_t step = 0; step < steps; ++step) {
        const std::vector<double> pi = tsallis_policy(table.row(x), q, lambda);
        const std::size_t a = draw_index(pi);
        std::vector<double> row(mdp.n_states);
        for (std::size_t xp = 0; xp < mdp.n_states; ++xp) row[xp] = mdp.prob(x, a, xp);
        const std::size_t xp = draw_index(row);
        const double rew = mdp.reward(x, a, xp);

        const std::vector<double> pi_next = tsallis_policy(table.row(xp), q, lambda);
        double v_next = lambda * tsallis_entropy_discrete(pi_next, q);
        for (std::size_t b = 0; b < mdp.n_actions; ++b) {
            v_next += table.q_value(xp, b) * pi_next[b];
        }
        const std::size_t idx = x * mdp.n_actions + a;
        const double rate = 1.0 / static_cast<double>(++visits[idx]);
        table.Q[idx] += rate * (rew + mdp.zeta * v_next - table.Q[idx]);
        x = xp;
        table.iterations = step + 1;
    }
    for (std::size_t s = 0; s < mdp.n_states; ++s) {
        const std::vector<double> pi = tsallis_policy(table.row(s), q, lambda);
        double v = lambda * tsallis_entropy_discrete(pi, q);
        for (std::size_t a = 0; a < mdp.n_actions; ++a) v += table.q_value(s, a) * pi[a];
        table.V[s] = v;
    }
    return table;
}

}  // namespace qsc
