#pragma once

#include <cmath>
#include <cstdint>

namespace qsc {

namespace detail {

// SplitMix64 finalizer (Stafford mix13).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

/// RNG channels used by the simulator. Strategies that share latent noise
/// consume the same A/W1 channels and differ only in their use of Uniforms.
enum class RngChannel : std::uint64_t {
    LatentA = 1,   // A_0 draw and W2 increments driving the latent factor
    NoiseW1 = 2,   // W1 increments driving the unaffected state Y
    Uniforms = 3,  // action draws nu = F^{-1}(u)
    Generic = 4,
};

/// Counter-based uniform stream keyed by (seed, path index, channel).
/// Each draw is a pure function of the key and a running counter, so
/// streams are reproducible regardless of thread scheduling and may be
/// created cheaply per path. Not a shared-state generator: every consumer
/// owns its own stream.
class CounterRng {
public:
    /// `salt` separates otherwise identically-keyed streams (e.g. the action
    /// uniforms of the same path simulated at different grid resolutions).
    CounterRng(std::uint64_t seed, std::uint64_t path, RngChannel channel, std::uint64_t salt = 0)
        : key_(make_key(seed, path, static_cast<std::uint64_t>(channel) ^
                                        (salt * 0x9e3779b97f4a7c15ULL))),
          counter_(0) {}

    /// Next uniform in the open interval (0, 1).
    double next_u01() {
        const std::uint64_t bits = detail::mix64(key_ ^ detail::mix64(++counter_));
        // 53 mantissa bits, offset by half a grid cell so 0 and 1 are excluded.
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw via the inverse CDF; strictly increasing in the
    /// underlying uniform, which keeps common-random-number couplings monotone.
    double next_normal() { return normal_quantile(next_u01()); }

    std::uint64_t counter() const noexcept { return counter_; }

    /// Wichura's AS 241 (PPND16): double-precision standard normal quantile.
    static double normal_quantile(double p);

private:
    static std::uint64_t make_key(std::uint64_t seed, std::uint64_t path, std::uint64_t channel) {
        std::uint64_t k = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
        k = detail::mix64(k ^ (path + 0xd1b54a32d192ed03ULL));
        k = detail::mix64(k ^ (channel + 0x8cb92ba72f3d8dd7ULL));
        return k;
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

inline double CounterRng::normal_quantile(double p) {
    // AS 241 PPND16, relative error ~1e-16 over (0,1).
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

}  // namespace qsc
