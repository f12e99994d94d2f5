#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rcsq {

/// Tolerances and truncation settings for the spectral integrals.
struct QuadratureConfig {
    double rel_tol = 1e-6;
    double abs_tol = 1e-10;
    double cutoff_factor = 20.0;     ///< omega-integrals run over +-cutoff_factor*omega_m
    double nu_cutoff_factor = 40.0;  ///< nu-integrals run over +-nu_cutoff_factor*Gamma
    std::vector<double> forced_breakpoints;  ///< extra panel edges, sorted
    std::size_t max_panels = 100000;
};

inline void validate(const QuadratureConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be positive");
    if (!(cfg.cutoff_factor >= 5.0))
        throw std::invalid_argument("cutoff_factor must be at least 5");
    if (!(cfg.nu_cutoff_factor > 0.0))
        throw std::invalid_argument("nu_cutoff_factor must be positive");
    if (!std::is_sorted(cfg.forced_breakpoints.begin(), cfg.forced_breakpoints.end()))
        throw std::invalid_argument("forced_breakpoints must be sorted");
}

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;      ///< summed per-panel error estimate
    std::size_t panels = 0;
    bool budget_exhausted = false;  ///< panel limit hit before the tolerance
};

namespace detail {

// Gauss 7 / Kronrod 15 on [-1,1]. Positive abscissae; index 0 is the center.
// All nodes are interior, so panel edges are never evaluated.
inline constexpr double gk_abscissae[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
inline constexpr double gk_weights[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
// Gauss weights attach to the even-index abscissae (0, 2, 4, 6).
inline constexpr double gauss_weights[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Panel {
    double a = 0, b = 0;
    double value = 0;
    double error = 0;
};

// One G7K15 evaluation with the QUADPACK error heuristic, which stays
// meaningful across the wide dynamic ranges of resonant integrands.
template <class F>
Panel gk15_panel(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = gauss_weights[0] * fc;
    double resk = gk_weights[0] * fc;
    double resabs = gk_weights[0] * std::abs(fc);

    double fv_lo[8], fv_hi[8];
    fv_lo[0] = fv_hi[0] = fc;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk_abscissae[i];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv_lo[i] = f1;
        fv_hi[i] = f2;
        const double sum = f1 + f2;
        resk += gk_weights[i] * sum;
        resabs += gk_weights[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 0) resg += gauss_weights[i / 2] * sum;
    }

    const double reskh = resk * 0.5;
    double resasc = gk_weights[0] * std::abs(fc - reskh);
    for (int i = 1; i < 8; ++i)
        resasc += gk_weights[i] *
                  (std::abs(fv_lo[i] - reskh) + std::abs(fv_hi[i] - reskh));

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    p.error = err;
    return p;
}

// Pairwise sum over [lo, hi) of member `m`; deterministic for a fixed order.
template <class M>
double pairwise_sum(const std::vector<Panel>& v, std::size_t lo, std::size_t hi, M member) {
    const std::size_t n = hi - lo;
    if (n == 0) return 0.0;
    if (n <= 4) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i].*member;
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum(v, lo, mid, member) + pairwise_sum(v, mid, hi, member);
}

}  // namespace detail

/// Adaptive panel quadrature of a real integrand over [a, b].
///
/// The interval is first split at every breakpoint inside (a, b); the worst
/// panel (largest error estimate) is then bisected until the summed estimate
/// meets max(abs_tol, rel_tol*|value|) or the panel budget is exhausted.
/// Evaluation points are strictly interior to each panel, so breakpoints
/// themselves are never sampled. Deterministic for fixed inputs.
template <class F>
IntegralResult integrate_adaptive(F&& f, double a, double b,
                                  const std::vector<double>& breakpoints,
                                  const QuadratureConfig& cfg) {
    if (!(a < b)) {
        if (a == b) return {};
        throw std::invalid_argument("integration interval must have a < b");
    }

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<detail::Panel> active;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        active.push_back(detail::gk15_panel(f, edges[i], edges[i + 1]));

    // Worst panel first; ties broken by position so the order is reproducible.
    auto worse = [](const detail::Panel& x, const detail::Panel& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    };
    std::make_heap(active.begin(), active.end(), worse);

    std::vector<detail::Panel> frozen;  // panels too narrow to split further
    double total_value = 0.0, total_error = 0.0;
    for (const auto& p : active) {
        total_value += p.value;
        total_error += p.error;
    }

    bool budget_exhausted = false;
    while (total_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value))) {
        if (active.empty()) break;
        if (active.size() + frozen.size() >= cfg.max_panels) {
            budget_exhausted = true;
            break;
        }
        std::pop_heap(active.begin(), active.end(), worse);
        detail::Panel worst = active.back();
        active.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            frozen.push_back(worst);  // interval at floating-point resolution
            continue;
        }
        total_value -= worst.value;
        total_error -= worst.error;

        const detail::Panel halves[2] = {detail::gk15_panel(f, worst.a, mid),
                                         detail::gk15_panel(f, mid, worst.b)};
        for (const detail::Panel& half : halves) {
            total_value += half.value;
            total_error += half.error;
            active.push_back(half);
            std::push_heap(active.begin(), active.end(), worse);
        }
    }

    // Recompute the totals with a fixed, position-ordered pairwise sum.
    active.insert(active.end(), frozen.begin(), frozen.end());
    std::sort(active.begin(), active.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    IntegralResult r;
    r.value = detail::pairwise_sum(active, 0, active.size(), &detail::Panel::value);
    r.error = detail::pairwise_sum(active, 0, active.size(), &detail::Panel::error);
    r.panels = active.size();
    r.budget_exhausted = budget_exhausted;
    return r;
}

}  // namespace rcsq
