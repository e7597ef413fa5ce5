#include "qsc/qgaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/quadrature.hpp"

namespace qsc {

namespace {

constexpr double kQuadTol = 1e-10;        // absolute tolerance of module quadratures
constexpr double kQuantileTol = 1e-12;    // probability tolerance of the inverse CDF
constexpr int kShapeCells = 2048;         // CDF table resolution per entropy index

double sqr(double x) { return x * x; }

}  // namespace

EntropyIndex::EntropyIndex(double q_value) : value(q_value) {
    if (!std::isfinite(q_value) || q_value <= 0.0) {
        throw NumericalError("entropy index q must be finite and positive, got " +
                             std::to_string(q_value));
    }
}

double tsallis_entropy_discrete(std::span<const double> weights, EntropyIndex q) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw InvalidDistribution("negative or non-finite weight " + std::to_string(w));
        }
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw InvalidDistribution("weights sum to " + std::to_string(sum) + ", expected 1");
    }
    if (q.is_shannon()) {
        double s = 0.0;
        for (double w : weights) {
            if (w > 0.0) s -= w * std::log(w);
        }
        return s;
    }
    double pq = 0.0;
    for (double w : weights) pq += std::pow(w, q.value);
    return (1.0 - pq) / (q.value - 1.0);
}

namespace {

// Closed Gamma-function expression for psi, evaluated in log space.
double psi_closed_form(double q, double lambda, double qfactor) {
    const double p = 1.0 / (q - 1.0);
    double log_base;
    if (q > 1.0) {
        log_base = std::lgamma(p + 1.5) - std::lgamma(p + 1.0) - 0.5 * std::log(std::numbers::pi) +
                   p * std::log(lambda * q / (q - 1.0)) + 0.5 * std::log(qfactor);
    } else {
        const double m = 1.0 / (1.0 - q);
        log_base = std::lgamma(m) - std::lgamma(m - 0.5) - 0.5 * std::log(std::numbers::pi) +
                   p * std::log(lambda * q / (1.0 - q)) + 0.5 * std::log(qfactor);
    }
    return std::exp(log_base / (p + 0.5));
}

// Mass of the unnormalized density for a trial psi; used by the bisection
// fallback when the Gamma expressions are numerically unusable.
double unnormalized_mass(double q, double lambda, double qfactor, double psi) {
    const double p = 1.0 / (q - 1.0);
    const double s = std::sqrt(psi / qfactor);
    if (q > 1.0) {
        const double log_c = p * std::log((q - 1.0) / (lambda * q));
        auto f = [&](double x) {
            const double arg = psi - qfactor * x * x;
            return arg > 0.0 ? std::exp(log_c + p * std::log(arg)) : 0.0;
        };
        return integrate_adaptive(f, -s, s, kQuadTol).value;
    }
    const double log_c = p * std::log((1.0 - q) / (lambda * q));
    auto f = [&](double x) { return std::exp(log_c + p * std::log(psi + qfactor * x * x)); };
    return integrate_real_line(f, 0.0, s, kQuadTol).value;
}

double psi_by_bisection(double q, double lambda, double qfactor) {
    // Mass is increasing in psi for q > 1 and decreasing for q < 1.
    double lo = 1e-12, hi = 1.0;
    const bool increasing = q > 1.0;
    auto deficit = [&](double psi) { return unnormalized_mass(q, lambda, qfactor, psi) - 1.0; };
    double flo = deficit(lo), fhi = deficit(hi);
    for (int i = 0; i < 200 && flo * fhi > 0.0; ++i) {
        if ((increasing && flo > 0.0) || (!increasing && flo < 0.0)) {
            hi = lo;
            fhi = flo;
            lo *= 0.5;
            flo = deficit(lo);
        } else {
            lo = hi;
            flo = fhi;
            hi *= 2.0;
            fhi = deficit(hi);
        }
    }
    if (flo * fhi > 0.0) throw NumericalError("psi bisection failed to bracket normalization");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = deficit(mid);
        if (std::fabs(fm) < 1e-13 || hi - lo < 1e-15 * std::max(1.0, mid)) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double normalizer_psi(EntropyIndex q, double lambda, double qfactor) {
    if (q.is_shannon()) {
        throw NumericalError("psi is undefined on the q = 1 branch");
    }
    if (q.value <= 1.0 / 3.0) {
        throw NumericalError("normalizer_psi requires q > 1/3, got " + std::to_string(q.value));
    }
    if (!(lambda > 0.0)) {
        throw NumericalError("normalizer_psi requires lambda > 0");
    }
    if (!(qfactor > 0.0)) {
        throw ConvexityViolation(qfactor);
    }
    const double psi = psi_closed_form(q.value, lambda, qfactor);
    if (std::isfinite(psi) && psi > 0.0) return psi;
    return psi_by_bisection(q.value, lambda, qfactor);
}

namespace detail {

/// Standardized shape of the q != 1 branches: the density of (nu - mu)/scale,
/// which depends only on q. Holds a cumulative Gauss-Kronrod CDF table used
/// for CDF evaluation and quantile inversion. For q < 1 everything lives in
/// theta-space through x = tan(theta) so the power tails compactify.
class StandardQGaussian {
public:
    explicit StandardQGaussian(double q) : q_(q), p_(1.0 / (q - 1.0)) {
        const double half_pi = std::numbers::pi / 2.0;
        if (q_ > 1.0) {
            // density (1-x^2)_+^p / B_p on [-1,1]
            log_norm_ = 0.5 * std::log(std::numbers::pi) + std::lgamma(p_ + 1.0) -
                        std::lgamma(p_ + 1.5);
            lo_ = -1.0;
            hi_ = 1.0;
        } else {
            // density (1+x^2)^p / B_p on the real line, tabulated in theta
            const double m = 1.0 / (1.0 - q);
            log_norm_ = 0.5 * std::log(std::numbers::pi) + std::lgamma(m - 0.5) - std::lgamma(m);
            lo_ = -half_pi;
            hi_ = half_pi;
        }
        nodes_.resize(kShapeCells + 1);
        cum_.resize(kShapeCells + 1);
        for (int j = 0; j <= kShapeCells; ++j) {
            // Chebyshev spacing clusters cells at the endpoints, where the
            // density vanishes and inversion needs the most help.
            const double t = -std::cos(std::numbers::pi * j / kShapeCells);
            nodes_[j] = 0.5 * (lo_ + hi_) + 0.5 * (hi_ - lo_) * t;
        }
        nodes_.front() = lo_;
        nodes_.back() = hi_;
        cum_[0] = 0.0;
        auto f = [this](double t) { return table_density(t); };
        for (int j = 0; j < kShapeCells; ++j) {
            cum_[j + 1] = cum_[j] + gk15_panel(f, nodes_[j], nodes_[j + 1]);
        }
        total_ = cum_.back();
    }

    // Standardized density g(x) of (nu-mu)/scale.
    double density(double x) const {
        if (q_ > 1.0) {
            const double b = 1.0 - x * x;
            return b > 0.0 ? std::exp(p_ * std::log(b) - log_norm_) : 0.0;
        }
        return std::exp(p_ * std::log1p(x * x) - log_norm_);
    }

    double cdf(double x) const {
        if (q_ > 1.0) {
            if (x <= -1.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return cumulative_at(x) / total_;
        }
        return cumulative_at(std::atan(x)) / total_;
    }

    double quantile(double u) const {
        u = std::clamp(u, std::numeric_limits<double>::min(), 1.0 - 1e-16);
        const double target = u * total_;
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
        int j = static_cast<int>(std::clamp<std::ptrdiff_t>(it - cum_.begin() - 1, 0,
                                                            kShapeCells - 1));
        double lo = nodes_[j], hi = nodes_[j + 1];
        double flo = cum_[j] - target, fhi = cum_[j + 1] - target;
        // initial proportional guess, then safeguarded Newton on the exact
        // within-cell quadrature
        double x = (std::fabs(fhi - flo) > 0.0) ? lo + (hi - lo) * (-flo) / (fhi - flo)
                                                : 0.5 * (lo + hi);
        auto f = [this](double t) { return table_density(t); };
        for (int iter = 0; iter < 80; ++iter) {
            const double e = cum_[j] + gk15_panel(f, nodes_[j], x) - target;
            if (std::fabs(e) <= kQuantileTol * std::max(1.0, total_)) break;
            if (e > 0.0) {
                hi = x;
            } else {
                lo = x;
            }
            const double slope = table_density(x);
            double next = (slope > 0.0) ? x - e / slope : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon() *
                              std::max(1.0, std::fabs(x))) {
                x = 0.5 * (lo + hi);
                break;
            }
            x = next;
        }
        return (q_ > 1.0) ? x : std::tan(x);
    }

private:
    // Density in table coordinates: g itself for q > 1, the tan-transformed
    // g(tan t)(1+tan^2 t) for q < 1.
    double table_density(double t) const {
        if (q_ > 1.0) return density(t);
        const double x = std::tan(t);
        const double v = density(x) * (1.0 + x * x);
        return std::isfinite(v) ? v : 0.0;
    }

    double cumulative_at(double t) const {
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
        int j = static_cast<int>(std::clamp<std::ptrdiff_t>(it - nodes_.begin() - 1, 0,
                                                            kShapeCells - 1));
        auto f = [this](double s) { return table_density(s); };
        return cum_[j] + gk15_panel(f, nodes_[j], std::clamp(t, nodes_[j], nodes_[j + 1]));
    }

    double q_;
    double p_;
    double log_norm_;
    double lo_, hi_;
    double total_;
    std::vector<double> nodes_;
    std::vector<double> cum_;
};

namespace {

std::shared_ptr<const StandardQGaussian> shape_for(double q) {
    static std::mutex mtx;
    static std::map<std::uint64_t, std::shared_ptr<const StandardQGaussian>> cache;
    std::uint64_t key;
    static_assert(sizeof(key) == sizeof(q));
    std::memcpy(&key, &q, sizeof(key));
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto shape = std::make_shared<const StandardQGaussian>(q);
    cache.emplace(key, shape);
    return shape;
}

}  // namespace

}  // namespace detail

QGaussianDist::QGaussianDist(EntropyIndex q, double mu, double lambda, double qfactor)
    : q_(q), mu_(mu), lambda_(lambda), qfactor_(qfactor) {
    if (q.value <= 1.0 / 3.0) {
        throw NumericalError("QGaussianDist requires q > 1/3, got " + std::to_string(q.value));
    }
    if (!(lambda > 0.0)) throw NumericalError("QGaussianDist requires lambda > 0");
    if (!(qfactor > 0.0)) throw ConvexityViolation(qfactor);
    sigma2_ = lambda / (2.0 * qfactor);
    if (q.is_shannon()) {
        psi_ = std::numeric_limits<double>::quiet_NaN();
        coeff_ = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma2_);
        scale_ = std::sqrt(sigma2_);
        return;
    }
    psi_ = normalizer_psi(q, lambda, qfactor);
    const double p = 1.0 / (q.value - 1.0);
    // log-space prefactor: the factors overflow separately as q -> 1 even
    // though the density itself stays O(1)
    coeff_ = (q.value > 1.0) ? p * std::log((q.value - 1.0) / (lambda * q.value))
                             : p * std::log((1.0 - q.value) / (lambda * q.value));
    scale_ = std::sqrt(psi_ / qfactor_);
    shape_ = detail::shape_for(q.value);
}

double QGaussianDist::support_halfwidth() const noexcept {
    return q_.compact_support() ? scale_ : std::numeric_limits<double>::infinity();
}

double QGaussianDist::pdf(double nu) const {
    const double d = nu - mu_;
    if (q_.is_shannon()) {
        return coeff_ * std::exp(-0.5 * d * d / sigma2_);
    }
    const double p = 1.0 / (q_.value - 1.0);
    if (q_.value > 1.0) {
        const double arg = psi_ - qfactor_ * d * d;
        return arg > 0.0 ? std::exp(coeff_ + p * std::log(arg)) : 0.0;
    }
    return std::exp(coeff_ + p * std::log(psi_ + qfactor_ * d * d));
}

double QGaussianDist::cdf(double nu) const {
    const double d = nu - mu_;
    if (q_.is_shannon()) {
        return 0.5 * std::erfc(-d / (scale_ * std::numbers::sqrt2));
    }
    return shape_->cdf(d / scale_);
}

double QGaussianDist::quantile(double u) const {
    if (q_.is_shannon()) {
        return mu_ + scale_ * CounterRng::normal_quantile(u);
    }
    return mu_ + scale_ * shape_->quantile(u);
}

double QGaussianDist::variance() const {
    if (q_.is_shannon()) return sigma2_;
    auto f = [this](double nu) { return sqr(nu - mu_) * pdf(nu); };
    QuadResult r;
    if (q_.compact_support()) {
        r = integrate_adaptive(f, mu_ - scale_, mu_ + scale_, kQuadTol);
    } else {
        r = integrate_real_line(f, mu_, scale_, kQuadTol);
    }
    if (!std::isfinite(r.value) || r.value < 0.0) {
        throw NumericalError("variance quadrature diverged");
    }
    return r.value;
}

double tsallis_entropy_continuous(const QGaussianDist& dist) {
    const EntropyIndex& q = dist.q();
    double value;
    if (q.is_shannon()) {
        auto f = [&](double nu) {
            const double p = dist.pdf(nu);
            return p > 0.0 ? -p * std::log(p) : 0.0;
        };
        const double w = 12.0 * dist.scale();
        value = integrate_adaptive(f, dist.mu() - w, dist.mu() + w, kQuadTol).value;
    } else {
        auto f = [&](double nu) { return std::pow(dist.pdf(nu), q.value); };
        double integral;
        if (q.compact_support()) {
            integral = integrate_adaptive(f, dist.mu() - dist.scale(), dist.mu() + dist.scale(),
                                          kQuadTol).value;
        } else {
            integral = integrate_real_line(f, dist.mu(), dist.scale(), kQuadTol).value;
        }
        value = (1.0 - integral) / (q.value - 1.0);
    }
    if (!std::isfinite(value)) {
        throw NumericalError("entropy quadrature produced a non-finite value");
    }
    return value;
}

}  // namespace qsc
