#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qsc/errors.hpp"
#include "qsc/ou_filter.hpp"
#include "qsc/rng.hpp"

using namespace qsc;

namespace {

OUParams demo_params() {
    OUParams p;
    p.sigma = 0.2;
    p.kappa = 1.0;
    p.eta = 2.0;
    p.A0_mean = 0.0;
    p.Sigma0 = 1.0;
    return p;
}

}  // namespace

TEST_CASE("filter step: hand-evaluated one-step update") {
    OUParams p;
    p.kappa = 0.0;
    p.eta = 0.0;
    p.sigma = 1.0;
    p.A0_mean = 0.0;
    p.Sigma0 = 1.0;
    const FilterState next = filter_step({0, 0.0, 1.0}, 2.0, p, 1.0);
    CHECK(next.n == 1);
    CHECK(next.A_hat == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(next.Sigma == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("no latent noise and no prior uncertainty: pure decay, zero variance") {
    OUParams p;
    p.kappa = 0.7;
    p.eta = 0.0;
    p.sigma = 0.5;
    p.A0_mean = 2.0;
    p.Sigma0 = 0.0;
    const double dt = 0.05;
    FilterState s{0, p.A0_mean, p.Sigma0};
    for (int n = 1; n <= 40; ++n) {
        s = filter_step(s, 0.123, p, dt);  // observations are ignored when Sigma == 0
        CHECK(s.Sigma == 0.0);
        CHECK(s.A_hat ==
              doctest::Approx(std::exp(-p.kappa * dt * n) * p.A0_mean).epsilon(1e-12));
    }
}

TEST_CASE("error variance stays nonnegative under random parameters") {
    CounterRng rng(99, 0, RngChannel::Generic);
    for (int trial = 0; trial < 10000; ++trial) {
        OUParams p;
        p.kappa = 3.0 * rng.next_u01();
        p.eta = 3.0 * rng.next_u01();
        p.sigma = 0.05 + 2.0 * rng.next_u01();
        p.Sigma0 = 3.0 * rng.next_u01();
        const double dt = 0.001 + rng.next_u01();
        FilterState s{0, 0.0, p.Sigma0};
        s = filter_step(s, 2.0 * rng.next_u01() - 1.0, p, dt);
        s = filter_step(s, 2.0 * rng.next_u01() - 1.0, p, dt);
        CHECK(s.Sigma >= 0.0);
    }
}

TEST_CASE("invalid grid is rejected") {
    CHECK_THROWS_AS((void)filter_step({0, 0.0, 1.0}, 0.0, demo_params(), 0.0), InvalidGrid);
    CHECK_THROWS_AS((void)filter_step({0, 0.0, 1.0}, 0.0, demo_params(), -0.1), InvalidGrid);
}

TEST_CASE("closed-form error variance") {
    const OUParams p = demo_params();
    SUBCASE("t = 0 returns Sigma0") {
        CHECK(sigma_continuous(0.0, p) == doctest::Approx(p.Sigma0).epsilon(1e-13));
        OUParams q = p;
        q.Sigma0 = 0.0;
        CHECK(sigma_continuous(0.0, q) == doctest::Approx(0.0).epsilon(1e-13));
    }
    SUBCASE("long-run limit equals the discrete fixed point") {
        const double steady = sigma_continuous(50.0, p);
        CHECK(steady == doctest::Approx(0.36199502484483561).epsilon(1e-10));
        // fixed point of the discrete recursion at dt = 1e-4
        const double dt = 1e-4;
        FilterState s{0, 0.0, p.Sigma0};
        for (int n = 0; n < 2000000; ++n) s = filter_step(s, 0.0, p, dt);
        CHECK(steady == doctest::Approx(s.Sigma).epsilon(1e-3));
    }
    SUBCASE("discrete sequence converges to the closed form on [0,1]") {
        const std::size_t N = 100000;
        const double dt = 1.0 / static_cast<double>(N);
        const std::vector<double> seq = sigma_sequence(p, N, dt);
        double max_err = 0.0;
        for (std::size_t n = 0; n <= N; n += 100) {
            max_err = std::max(max_err,
                               std::fabs(seq[n] - sigma_continuous(dt * n, p)));
        }
        CHECK(max_err < 1e-3);
    }
    SUBCASE("eta = 0 is outside the closed form") {
        OUParams q = p;
        q.eta = 0.0;
        CHECK_THROWS_AS((void)sigma_continuous(1.0, q), NumericalError);
    }
}

TEST_CASE("Sigma recursion contracts monotonically to its fixed point") {
    const OUParams p = demo_params();
    const double dt = 0.01;
    // long-run value of the recursion itself
    FilterState ref{0, 0.0, 1.0};
    for (int n = 0; n < 200000; ++n) ref = filter_step(ref, 0.0, p, dt);
    const double fixed = ref.Sigma;
    for (double s0 : {0.0, 0.05, 0.5, 2.0, 10.0}) {
        FilterState s{0, 0.0, s0};
        double dist = std::fabs(s.Sigma - fixed);
        for (int n = 0; n < 3000; ++n) {
            s = filter_step(s, 0.0, p, dt);
            const double nd = std::fabs(s.Sigma - fixed);
            CHECK(nd <= dist + 1e-12);
            dist = nd;
        }
        CHECK(dist < 1e-6);
    }
}

TEST_CASE("Monte Carlo: the filter is unbiased and its MSE tracks Sigma") {
    const OUParams p = demo_params();
    const std::size_t N = 10;
    const double dt = 0.1;
    const std::vector<double> sigma = sigma_sequence(p, N, dt);
    const std::size_t n_paths = 30000;

    std::vector<double> bias(N + 1, 0.0), mse(N + 1, 0.0), var_err(N + 1, 0.0);
    for (std::size_t path = 0; path < n_paths; ++path) {
        CounterRng latent(7, path, RngChannel::LatentA);
        CounterRng w1(7, path, RngChannel::NoiseW1);
        double A = p.A0_mean + std::sqrt(p.Sigma0) * latent.next_normal();
        FilterState s{0, p.A0_mean, p.Sigma0};
        bias[0] += A - s.A_hat;
        mse[0] += (A - s.A_hat) * (A - s.A_hat);
        for (std::size_t n = 0; n < N; ++n) {
            const double dY = A * dt + p.sigma * std::sqrt(dt) * w1.next_normal();
            s = filter_step(s, dY, p, dt);
            A = std::exp(-p.kappa * dt) * A + p.eta * std::sqrt(dt) * latent.next_normal();
            const double err = A - s.A_hat;
            bias[n + 1] += err;
            mse[n + 1] += err * err;
            var_err[n + 1] += err * err * err * err;
        }
    }
    for (std::size_t n = 0; n <= N; ++n) {
        bias[n] /= static_cast<double>(n_paths);
        mse[n] /= static_cast<double>(n_paths);
        // standard error of the mean error ~ sqrt(Sigma_n / paths)
        const double se_mean = std::sqrt(sigma[n] / static_cast<double>(n_paths));
        INFO("n=", n, " bias=", bias[n], " mse=", mse[n], " sigma=", sigma[n]);
        CHECK(std::fabs(bias[n]) <= 3.0 * se_mean);
        // MSE has chi-square fluctuations: SE ~ sigma_n sqrt(2/paths)
        const double se_mse = sigma[n] * std::sqrt(2.0 / static_cast<double>(n_paths));
        CHECK(std::fabs(mse[n] - sigma[n]) <= 3.0 * se_mse);
    }
}
