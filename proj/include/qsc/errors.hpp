#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsc {

/// Quadrature failure, divergent integral, or parameters outside the
/// validity region of a closed-form expression.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Probability weights that are negative or do not sum to one.
class InvalidDistribution : public std::runtime_error {
public:
    explicit InvalidDistribution(const std::string& what) : std::runtime_error(what) {}
};

/// The per-step quadratic action penalty K_n - h2_{n+1} gamma_n^2 dt became
/// nonpositive: the inner maximization is no longer strictly concave.
/// Fatal by design; clamping would corrupt the optimum.
class ConvexityViolation : public std::runtime_error {
public:
    ConvexityViolation(std::size_t step, double qfactor)
        : std::runtime_error("qfactor " + std::to_string(qfactor) +
                             " <= 0 at step " + std::to_string(step)),
          step_(step),
          qfactor_(qfactor) {}

    /// For uses outside a grid recursion (e.g. constructing a distribution
    /// directly from a nonpositive penalty).
    explicit ConvexityViolation(double qfactor)
        : std::runtime_error("qfactor " + std::to_string(qfactor) + " <= 0"),
          step_(static_cast<std::size_t>(-1)),
          qfactor_(qfactor) {}

    std::size_t step() const noexcept { return step_; }
    double qfactor() const noexcept { return qfactor_; }

private:
    std::size_t step_;
    double qfactor_;
};

/// Nonpositive time step or inconsistent grid sizes.
class InvalidGrid : public std::runtime_error {
public:
    explicit InvalidGrid(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter combination at which a closed form divides by ~0 (e.g. omega == kappa).
class DegenerateParameters : public std::runtime_error {
public:
    explicit DegenerateParameters(const std::string& what) : std::runtime_error(what) {}
};

/// Iteration budget exhausted before reaching tolerance; carries the residual.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Config file / CLI override violates the schema; carries the field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace qsc
