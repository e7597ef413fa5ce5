#include "qsc/continuous.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qsc/errors.hpp"
#include "qsc/quadrature.hpp"

namespace qsc {

ClosedFormSolution ClosedFormSolution::make(double B, double C, double D, double K, double gamma,
                                            double T) {
    if (!(K > 0.0) || !(C > 0.0) || gamma == 0.0 || !(T > 0.0)) {
        throw NumericalError("closed form requires K > 0, C > 0, gamma != 0, T > 0");
    }
    if (!(B >= 0.0)) throw NumericalError("closed form requires B >= 0");
    ClosedFormSolution s;
    s.B = B;
    s.C = C;
    s.D = D;
    s.K = K;
    s.gamma = gamma;
    s.T = T;
    s.omega = gamma * std::sqrt(C / K);
    s.psi_plus = std::sqrt(2.0 * C) + std::sqrt(2.0 / K) * gamma * B - D / std::sqrt(2.0 * K);
    s.psi_minus = std::sqrt(2.0 * C) - std::sqrt(2.0 / K) * gamma * B + D / std::sqrt(2.0 * K);
    // The denominator psi- e^{-w s} + psi+ e^{w s} (s = T - t) may only
    // vanish at s* = log(-psi-/psi+)/(2w); reject if that lands in [0, T].
    if (s.psi_minus * s.psi_plus < 0.0) {
        const double s_star = std::log(-s.psi_minus / s.psi_plus) / (2.0 * s.omega);
        if (s_star >= 0.0 && s_star <= T) {
            throw NumericalError("closed form denominator vanishes inside [0, T]");
        }
    }
    return s;
}

namespace {

double denominator(double s, const ClosedFormSolution& sol) {
    return sol.psi_minus * std::exp(-sol.omega * s) + sol.psi_plus * std::exp(sol.omega * s);
}

}  // namespace

double h2_closed(double t, const ClosedFormSolution& sol) {
    const double s = sol.T - t;
    const double den = denominator(s, sol);
    if (std::fabs(den) < 1e-14) {
        throw NumericalError("h2_closed: denominator below 1e-14 at t = " + std::to_string(t));
    }
    const double num = sol.psi_minus * std::exp(-sol.omega * s) -
                       sol.psi_plus * std::exp(sol.omega * s);
    return std::sqrt(sol.C * sol.K) / sol.gamma * num / den - sol.D / (2.0 * sol.gamma);
}

double h1_coefficient(double t, const ClosedFormSolution& sol, double kappa) {
    if (std::fabs(sol.omega - kappa) < 1e-12 || std::fabs(sol.omega + kappa) < 1e-12) {
        throw DegenerateParameters("h1 closed form requires omega != +-kappa");
    }
    const double s = sol.T - t;
    const double den = denominator(s, sol);
    if (std::fabs(den) < 1e-14) {
        throw NumericalError("h1_closed: denominator below 1e-14 at t = " + std::to_string(t));
    }
    const double root_ck = 2.0 * std::sqrt(sol.C * sol.K);
    const double e_kappa = std::exp(-kappa * s);
    const double term_minus = sol.psi_minus * (root_ck - sol.D) *
                              (e_kappa - std::exp(-sol.omega * s)) /
                              ((sol.omega - kappa) * den);
    const double term_plus = sol.psi_plus * (root_ck + sol.D) *
                             (e_kappa - std::exp(sol.omega * s)) /
                             ((sol.omega + kappa) * den);
    return (term_minus + term_plus) / sol.gamma;
}

double h1_closed(double t, double a_hat, const ClosedFormSolution& sol, double kappa) {
    return h1_coefficient(t, sol, kappa) * a_hat;
}

double alpha_q(double t, EntropyIndex q, double lambda, double K_t) {
    (void)t;  // alpha depends on t only through K_t; callers pass K(t)
    if (!(lambda > 0.0)) throw NumericalError("alpha_q requires lambda > 0");
    if (!(K_t > 0.0)) throw NumericalError("alpha_q requires K_t > 0");
    if (q.is_shannon()) {
        return lambda * std::log(std::sqrt(K_t / (std::numbers::pi * lambda)));
    }
    if (q.value <= 1.0 / 3.0) {
        throw NumericalError("alpha_q requires q > 1/3");
    }
    const double psi = normalizer_psi(q, lambda, K_t);
    const double shift = psi * (q.value + 1.0) / (3.0 * q.value - 1.0);
    const double base = -lambda / (q.value - 1.0);
    return (q.value > 1.0) ? base + shift : base - shift;
}

double alpha_q_integral(EntropyIndex q, double lambda,
                        const std::function<double(double)>& K_of_t, double t0, double t1) {
    if (!(t1 >= t0)) throw NumericalError("alpha_q_integral requires t1 >= t0");
    const GaussLegendreRule& rule = gauss_legendre_rule(64);
    const double mid = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = mid + half * rule.nodes[i];
        acc += rule.weights[i] * alpha_q(u, q, lambda, K_of_t(u));
    }
    return acc * half;
}

}  // namespace qsc
