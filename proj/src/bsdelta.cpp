#include "qsc/bsdelta.hpp"

#include <cmath>
#include <string>

#include "qsc/errors.hpp"

namespace qsc {

LQCoefficients LQCoefficients::constant(double B, double C, double D, double K, double gamma,
                                        double T, std::size_t N) {
    if (N == 0 || !(T > 0.0)) throw InvalidGrid("LQCoefficients: need N >= 1 and T > 0");
    LQCoefficients c;
    c.B = B;
    c.C.assign(N, C);
    c.D.assign(N, D);
    c.K.assign(N, K);
    c.gamma.assign(N, gamma);
    c.dt = T / static_cast<double>(N);
    c.N = N;
    c.validate();
    return c;
}

void LQCoefficients::validate() const {
    if (N == 0) throw InvalidGrid("LQCoefficients: N must be >= 1");
    if (!(dt > 0.0)) throw InvalidGrid("LQCoefficients: dt must be > 0");
    if (C.size() != N || D.size() != N || K.size() != N || gamma.size() != N) {
        throw InvalidGrid("LQCoefficients: sequences must have length exactly N");
    }
    if (!(B >= 0.0)) throw NumericalError("LQCoefficients: B must be >= 0");
    for (std::size_t n = 0; n < N; ++n) {
        if (!(K[n] > 0.0)) {
            throw NumericalError("LQCoefficients: K must be > 0 (step " + std::to_string(n) + ")");
        }
    }
}

std::vector<double> solve_h2(const LQCoefficients& coeffs) {
    coeffs.validate();
    std::vector<double> h2(coeffs.N + 1);
    h2[coeffs.N] = -coeffs.B;
    for (std::size_t i = coeffs.N; i-- > 0;) {
        const double qf = coeffs.K[i] - h2[i + 1] * coeffs.gamma[i] * coeffs.gamma[i] * coeffs.dt;
        if (!(qf > 0.0)) throw ConvexityViolation(i, qf);
        const double lin = 2.0 * h2[i + 1] * coeffs.gamma[i] + coeffs.D[i];
        h2[i] = h2[i + 1] - coeffs.C[i] * coeffs.dt + lin * lin / (4.0 * qf) * coeffs.dt;
    }
    return h2;
}

std::vector<double> solve_phi(const LQCoefficients& coeffs, const std::vector<double>& h2,
                              double kappa) {
    coeffs.validate();
    if (h2.size() != coeffs.N + 1) throw InvalidGrid("solve_phi: h2 must have length N+1");
    const double decay = std::exp(-kappa * coeffs.dt);
    std::vector<double> phi(coeffs.N + 1);
    phi[coeffs.N] = 0.0;
    for (std::size_t i = coeffs.N; i-- > 0;) {
        const double qf = coeffs.K[i] - h2[i + 1] * coeffs.gamma[i] * coeffs.gamma[i] * coeffs.dt;
        if (!(qf > 0.0)) throw ConvexityViolation(i, qf);
        const double b = coeffs.gamma[i] * (2.0 * h2[i + 1] * coeffs.gamma[i] + coeffs.D[i]) /
                         (2.0 * qf);
        const double a = 2.0 * h2[i + 1] * (1.0 + b * coeffs.dt);
        phi[i] = a * coeffs.dt + (1.0 + b * coeffs.dt) * decay * phi[i + 1];
    }
    return phi;
}

BackwardSolution solve_backward(const LQCoefficients& coeffs, double kappa) {
    BackwardSolution sol;
    sol.h2 = solve_h2(coeffs);
    sol.phi = solve_phi(coeffs, sol.h2, kappa);
    sol.qfactor.resize(coeffs.N);
    for (std::size_t n = 0; n < coeffs.N; ++n) {
        sol.qfactor[n] = coeffs.K[n] -
                         sol.h2[n + 1] * coeffs.gamma[n] * coeffs.gamma[n] * coeffs.dt;
    }
    return sol;
}

double classical_control(std::size_t n, double x, double a_hat, const BackwardSolution& sol,
                         const LQCoefficients& coeffs, double kappa) {
    const double decay = std::exp(-kappa * coeffs.dt);
    const double h2n1 = sol.h2[n + 1];
    const double g = coeffs.gamma[n];
    const double qf = sol.qfactor[n];
    return (decay * sol.phi[n + 1] * a_hat * g + 2.0 * h2n1 * a_hat * g * coeffs.dt +
            (2.0 * h2n1 * g + coeffs.D[n]) * x) /
           (2.0 * qf);
}

}  // namespace qsc
