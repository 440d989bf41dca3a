#ifndef PHONDEQ_QUADRATURE_HPP
#define PHONDEQ_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace phondeq {

namespace detail {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss
// rule (QUADPACK dqk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kGK15WeightsK[7] * fc;
    double resg = kGK15WeightsG[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kGK15Nodes[j];
        const double fsum = f(c - dx) + f(c + dx);
        resk += kGK15WeightsK[j] * fsum;
        if (j % 2 == 1) resg += kGK15WeightsG[j / 2] * fsum;
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to an absolute
/// tolerance, by recursive bisection of the worst panel.
template <typename F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol = 1e-12,
                          int max_depth = 50) {
    struct Panel {
        double a, b, value, error;
        int depth;
    };
    auto [v0, e0] = detail::gk15(f, a, b);
    std::vector<Panel> panels{{a, b, v0, e0, 0}};
    auto total_error = [&] {
        double e = 0.0;
        for (const auto& p : panels) e += p.error;
        return e;
    };
    while (total_error() > abs_tol) {
        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const Panel& x, const Panel& y) {
                                          return x.error < y.error;
                                      });
        if (worst->depth >= max_depth)
            throw std::runtime_error("integrate_adaptive: tolerance not reached");
        Panel p = *worst;
        panels.erase(worst);
        const double m = 0.5 * (p.a + p.b);
        auto [vl, el] = detail::gk15(f, p.a, m);
        auto [vr, er] = detail::gk15(f, m, p.b);
        panels.push_back({p.a, m, vl, el, p.depth + 1});
        panels.push_back({m, p.b, vr, er, p.depth + 1});
    }
    double v = 0.0;
    for (const auto& p : panels) v += p.value;
    return v;
}

/// Adaptive integration with the interval split at interior breakpoints
/// (e.g. kinks of piecewise kernels) before any subdivision happens.
template <typename F>
double integrate_with_breakpoints(const F& f, double a, double b,
                                  std::vector<double> breakpoints, double abs_tol = 1e-12) {
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a + 1e-14 && x < b - 1e-14) edges.push_back(x);
    edges.push_back(b);
    double total = 0.0;
    const double per_panel = abs_tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        total += integrate_adaptive(f, edges[i], edges[i + 1], per_panel);
    return total;
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on
/// the Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    constexpr double pi = 3.14159265358979323846;
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

/// Fixed composite Gauss-Legendre grid over [0, b]: `panels` equal
/// subintervals with `nodes_per_panel` nodes each. Returns global
/// nodes and weights.
inline void composite_gauss_grid(double b, int panels, int nodes_per_panel,
                                 std::vector<double>& nodes, std::vector<double>& weights) {
    if (!(b > 0.0) || panels < 1 || nodes_per_panel < 1)
        throw std::invalid_argument("composite_gauss_grid: invalid grid parameters");
    std::vector<double> xi, wi;
    gauss_legendre(nodes_per_panel, xi, wi);
    nodes.clear();
    weights.clear();
    nodes.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
    weights.reserve(nodes.capacity());
    const double h = b / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = p * h;
        for (int j = 0; j < nodes_per_panel; ++j) {
            nodes.push_back(lo + 0.5 * h * (xi[j] + 1.0));
            weights.push_back(0.5 * h * wi[j]);
        }
    }
}

}  // namespace phondeq

#endif  // PHONDEQ_QUADRATURE_HPP
