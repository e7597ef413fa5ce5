#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "qsc/qlearn.hpp"
#include "qsc/sim.hpp"

namespace qsc {

/// Shortest decimal form that round-trips the IEEE-754 double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        // prefer the shortest representation that still round-trips
        for (int prec = 15; prec <= 16; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

inline void write_paths_csv(std::ostream& out, const std::vector<PathRecord>& records) {
    out << "path_id,n,t,A,Y,A_hat,X,nu,mode,q,lambda,N\n";
    for (const PathRecord& rec : records) {
        for (std::size_t n = 0; n <= rec.N; ++n) {
            out << rec.path_id << ',' << n << ',' << format_double(rec.t[n]) << ','
                << format_double(rec.A[n]) << ',' << format_double(rec.Y[n]) << ','
                << format_double(rec.A_hat[n]) << ',' << format_double(rec.X[n]) << ','
                << (n < rec.N ? format_double(rec.nu[n]) : std::string{}) << ','
                << to_string(rec.mode) << ',' << format_double(rec.q) << ','
                << format_double(rec.lambda) << ',' << rec.N << '\n';
        }
    }
}

inline void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "q,lambda,N,median_sup_err,p90_sup_err\n";
    for (const ConvergenceRow& row : rows) {
        out << format_double(row.q) << ',' << format_double(row.lambda) << ',' << row.N << ','
            << format_double(row.median_sup_err) << ',' << format_double(row.p90_sup_err)
            << '\n';
    }
}

inline void write_approx_csv(std::ostream& out, const std::vector<ApproxRow>& rows) {
    out << "q,lambda,N,n,t,mean_abs_diff,mean_diff\n";
    for (const ApproxRow& row : rows) {
        out << format_double(row.q) << ',' << format_double(row.lambda) << ',' << row.N << ','
            << row.n << ',' << format_double(row.t) << ',' << format_double(row.mean_abs_diff)
            << ',' << format_double(row.mean_diff) << '\n';
    }
}

inline void write_backward_csv(std::ostream& out, const LQCoefficients& coeffs,
                               const BackwardSolution& sol) {
    out << "n,t,h2,phi,qfactor\n";
    for (std::size_t n = 0; n <= coeffs.N; ++n) {
        out << n << ',' << format_double(coeffs.dt * static_cast<double>(n)) << ','
            << format_double(sol.h2[n]) << ',' << format_double(sol.phi[n]) << ','
            << (n < coeffs.N ? format_double(sol.qfactor[n]) : std::string{}) << '\n';
    }
}

inline void write_closed_form_csv(std::ostream& out, const ClosedFormSolution& sol, double kappa,
                                  std::size_t samples) {
    out << "t,h1_coeff,h2\n";
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = sol.T * static_cast<double>(i) / static_cast<double>(samples);
        out << format_double(t) << ',' << format_double(h1_coefficient(t, sol, kappa)) << ','
            << format_double(h2_closed(t, sol)) << '\n';
    }
}

inline void write_qtable_csv(std::ostream& out, const SoftQTable& table,
                             const std::vector<StatePolicyReport>& reports) {
    out << "state,action,Q,pi\n";
    for (std::size_t x = 0; x < table.n_states; ++x) {
        for (std::size_t a = 0; a < table.n_actions; ++a) {
            out << x << ',' << a << ',' << format_double(table.q_value(x, a)) << ','
                << format_double(reports[x].pi[a]) << '\n';
        }
    }
}

inline void write_policy_report_csv(std::ostream& out, const SoftQTable& table,
                                    const std::vector<StatePolicyReport>& reports) {
    out << "state,support_size,entropy,greedy_agreement,V\n";
    for (const StatePolicyReport& rep : reports) {
        out << rep.state << ',' << rep.support_size << ',' << format_double(rep.entropy) << ','
            << (rep.greedy_agreement ? 1 : 0) << ',' << format_double(table.V[rep.state])
            << '\n';
    }
}

}  // namespace qsc
