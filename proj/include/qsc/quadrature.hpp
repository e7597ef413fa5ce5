#pragma once

#include <functional>
#include <vector>

namespace qsc {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Single 15-point Gauss–Kronrod panel on [a, b]. No error control; meant
/// for short smooth panels (the sampler's within-cell CDF refinements).
double gk15_panel(const std::function<double(double)>& f, double a, double b);

/// Adaptive Gauss–Kronrod (7/15) bisection to absolute tolerance `abs_tol`.
/// Throws NumericalError if the result is non-finite or the tolerance is
/// unreachable within the depth budget by a wide margin.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-10, int max_depth = 48);

/// Integral of f over the whole real line through the substitution
/// x = center + scale * tan(theta); adaptive on theta in (-pi/2, pi/2).
/// Suitable for integrands with polynomial tail decay (the q < 1 branch).
QuadResult integrate_real_line(const std::function<double(double)>& f, double center,
                               double scale, double abs_tol = 1e-10);

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(int n);

}  // namespace qsc
