#include "qsc/ou_filter.hpp"

#include <cmath>
#include <string>

#include "qsc/errors.hpp"

namespace qsc {

void OUParams::validate() const {
    if (!(sigma > 0.0)) throw NumericalError("OUParams: sigma must be > 0");
    if (!(kappa >= 0.0) || !(eta >= 0.0) || !(Sigma0 >= 0.0) || !std::isfinite(A0_mean)) {
        throw NumericalError("OUParams: kappa, eta, Sigma0 must be >= 0 and finite");
    }
}

FilterState filter_step(const FilterState& state, double dY, const OUParams& params, double dt) {
    if (!(dt > 0.0)) throw InvalidGrid("filter_step requires dt > 0");
    const double decay = std::exp(-params.kappa * dt);
    const double denom = params.sigma * params.sigma + state.Sigma * dt;
    FilterState next;
    next.n = state.n + 1;
    next.A_hat = decay * state.A_hat + decay * state.Sigma / denom * (dY - state.A_hat * dt);
    next.Sigma = decay * decay * state.Sigma + params.eta * params.eta * dt -
                 decay * decay * state.Sigma * state.Sigma * dt / denom;
    return next;
}

std::vector<double> sigma_sequence(const OUParams& params, std::size_t N, double dt) {
    if (!(dt > 0.0)) throw InvalidGrid("sigma_sequence requires dt > 0");
    params.validate();
    std::vector<double> sigma(N + 1);
    sigma[0] = params.Sigma0;
    FilterState s{0, params.A0_mean, params.Sigma0};
    for (std::size_t n = 0; n < N; ++n) {
        s = filter_step(s, 0.0, params, dt);  // Sigma update ignores the observation
        sigma[n + 1] = s.Sigma;
    }
    return sigma;
}

double sigma_continuous(double t, const OUParams& params) {
    params.validate();
    if (!(t >= 0.0)) throw NumericalError("sigma_continuous requires t >= 0");
    if (!(params.eta > 0.0)) {
        throw NumericalError("sigma_continuous requires eta > 0 (closed form degenerates)");
    }
    const double sigma = params.sigma;
    const double root = std::sqrt(sigma * sigma * params.kappa * params.kappa +
                                  params.eta * params.eta);
    const double alpha_plus = (-sigma * params.kappa + root) / (sigma * params.eta * params.eta);
    const double alpha_minus = (-sigma * params.kappa - root) / (sigma * params.eta * params.eta);
    const double xi = root / sigma;
    // Scale both exponentials by e^{-xi t} to avoid overflow at large t.
    const double ep = 1.0;
    const double em = std::exp(-2.0 * xi * t);
    const double num = (1.0 + alpha_plus * params.Sigma0) * ep -
                       (1.0 + alpha_minus * params.Sigma0) * em;
    const double den = -alpha_minus * (1.0 + alpha_plus * params.Sigma0) * ep +
                       alpha_plus * (1.0 + alpha_minus * params.Sigma0) * em;
    if (!(den > 0.0)) {
        throw NumericalError("sigma_continuous: denominator " + std::to_string(den) +
                             " outside formula validity");
    }
    return num / den;
}

}  // namespace qsc
