#include "qsc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

// QUADPACK 15-point Kronrod abscissae/weights; Gauss-7 shares nodes 1,3,5,7.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15_with_error(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double fsum = f(c - x) + f(c + x);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::fabs(kron - gauss)};
}

}  // namespace

double gk15_panel(const std::function<double(double)>& f, double a, double b) {
    return gk15_with_error(f, a, b).kronrod;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth) {
    struct Segment {
        double a, b, tol;
        int depth;
    };
    std::vector<Segment> stack{{a, b, abs_tol, 0}};
    double total = 0.0;
    double err_total = 0.0;
    std::size_t panels = 0;
    constexpr std::size_t kPanelBudget = 200000;
    while (!stack.empty()) {
        const Segment s = stack.back();
        stack.pop_back();
        const PanelResult p = gk15_with_error(f, s.a, s.b);
        ++panels;
        if (!std::isfinite(p.kronrod)) {
            throw NumericalError("adaptive quadrature hit a non-finite integrand value in [" +
                                 std::to_string(s.a) + ", " + std::to_string(s.b) + "]");
        }
        if (p.error <= s.tol || s.depth >= max_depth || panels >= kPanelBudget ||
            (s.b - s.a) <= 64.0 * std::numeric_limits<double>::epsilon() *
                               (std::fabs(s.a) + std::fabs(s.b))) {
            total += p.kronrod;
            err_total += p.error;
            continue;
        }
        const double m = 0.5 * (s.a + s.b);
        stack.push_back({s.a, m, 0.5 * s.tol, s.depth + 1});
        stack.push_back({m, s.b, 0.5 * s.tol, s.depth + 1});
    }
    if (!std::isfinite(total)) {
        throw NumericalError("adaptive quadrature produced a non-finite value");
    }
    if (err_total > std::max(1e3 * abs_tol, 1e-6 * std::fabs(total))) {
        throw NumericalError("adaptive quadrature failed to reach tolerance (error estimate " +
                             std::to_string(err_total) + ")");
    }
    return {total, err_total};
}

QuadResult integrate_real_line(const std::function<double(double)>& f, double center,
                               double scale, double abs_tol) {
    if (!(scale > 0.0)) throw NumericalError("integrate_real_line requires scale > 0");
    auto g = [&](double theta) {
        const double t = std::tan(theta);
        const double x = center + scale * t;
        const double v = f(x) * scale * (1.0 + t * t);
        return std::isfinite(v) ? v : 0.0;
    };
    const double half_pi = std::numbers::pi / 2.0;
    return integrate_adaptive(g, -half_pi, half_pi, abs_tol);
}

const GaussLegendreRule& gauss_legendre_rule(int n) {
    static std::mutex mtx;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n with the asymptotic root estimate as seed.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, inserted] = cache.emplace(n, std::move(rule));
    (void)inserted;
    return pos->second;
}

}  // namespace qsc
