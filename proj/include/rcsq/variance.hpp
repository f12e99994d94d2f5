#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rcsq/linear_response.hpp"
#include "rcsq/noise_spectra.hpp"
#include "rcsq/params.hpp"
#include "rcsq/quadrature.hpp"

namespace rcsq {

/// The stationary variance split into its four spectral channels. The
/// thermal, N and vacuum terms are nonnegative by construction; the M term
/// is the interference channel that can turn negative and squeeze.
struct VarianceBreakdown {
    double thermal_term = 0;
    double m_term = 0;
    double n_term = 0;
    double vacuum_term = 0;
    double total = 0;
    double squeezing_percent = 0;  ///< max(0, 1 - total) * 100
    double estimated_quadrature_error = 0;
    bool tolerance_met = true;
};

namespace detail {

inline bool integral_ok(const IntegralResult& r, const QuadratureConfig& cfg) {
    return !r.budget_exhausted &&
           r.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
}

template <class TF, class SF>
VarianceBreakdown variance_from_transfers(TF&& thermal_tf, SF&& squeeze_tf,
                                          const DerivedParams& d, const Baths& baths,
                                          const QuadratureConfig& cfg) {
    const double cut = cfg.cutoff_factor * d.omega_m;
    const double nu_cut = cfg.nu_cutoff_factor * baths.squeezed.big_gamma;
    const double center = baths.squeezed.center;

    // Mechanical resonances produce features far narrower than the intervals;
    // pinning panel edges there keeps the subdivider from stepping over them.
    // User breakpoints apply to both the omega and the nu axis.
    std::vector<double> omega_bp = {-d.omega_m, 0.0, d.omega_m};
    std::vector<double> nu_bp = {0.0};
    for (double x : cfg.forced_breakpoints) {
        omega_bp.push_back(x);
        nu_bp.push_back(x);
    }

    const auto thermal = integrate_adaptive(
        [&](double w) {
            return (thermal_tf(w) * thermal_tf(-w)).real() *
                   thermal_density(baths.thermal, w);
        },
        -cut, cut, omega_bp, cfg);

    const auto m_chan = integrate_adaptive(
        [&](double nu) {
            return (squeeze_tf(center + nu) * squeeze_tf(center - nu) *
                    baths.squeezed.m_sq)
                       .real() *
                   lorentz_weight(baths.squeezed, nu);
        },
        -nu_cut, nu_cut, nu_bp, cfg);

    const auto n_chan = integrate_adaptive(
        [&](double nu) {
            return std::norm(squeeze_tf(center + nu)) * baths.squeezed.n_sq *
                   lorentz_weight(baths.squeezed, nu);
        },
        -nu_cut, nu_cut, nu_bp, cfg);

    const auto vacuum = integrate_adaptive(
        [&](double w) { return std::norm(squeeze_tf(w)); }, -cut, cut, omega_bp, cfg);

    const double inv2pi = 1.0 / (2.0 * constants::pi);
    VarianceBreakdown v;
    v.thermal_term = thermal.value * inv2pi;
    v.m_term = 2.0 * m_chan.value * inv2pi;
    v.n_term = 2.0 * n_chan.value * inv2pi;
    v.vacuum_term = vacuum.value * inv2pi;
    v.total = v.thermal_term + v.m_term + v.n_term + v.vacuum_term;
    v.squeezing_percent = std::max(0.0, 1.0 - v.total) * 100.0;
    v.estimated_quadrature_error =
        (thermal.error + vacuum.error + 2.0 * (m_chan.error + n_chan.error)) * inv2pi;
    v.tolerance_met = integral_ok(thermal, cfg) && integral_ok(m_chan, cfg) &&
                      integral_ok(n_chan, cfg) && integral_ok(vacuum, cfg);
    return v;
}

}  // namespace detail

/// Stationary momentum variance at a stable operating point.
/// Throws "unstable operating point" when the drift spectrum is not strictly
/// damped (no stationary state exists there).
inline VarianceBreakdown momentum_variance(const DerivedParams& d,
                                           const OperatingPoint& op, double delta,
                                           const Baths& baths,
                                           const QuadratureConfig& cfg) {
    validate(cfg);
    if (!is_stable(build_drift_matrix(d, op, delta)))
        throw std::runtime_error("unstable operating point");
    auto thermal_tf = [&](double w) { return response_at(d, op, delta, w).p_t; };
    auto squeeze_tf = [&](double w) { return response_at(d, op, delta, w).p_s; };
    return detail::variance_from_transfers(thermal_tf, squeeze_tf, d, baths, cfg);
}

/// Stationary position variance; same template with the position transfers.
/// Quadrature nodes are interior to panels and zero is a forced panel edge,
/// so the removable omega = 0 point is never evaluated.
inline VarianceBreakdown position_variance(const DerivedParams& d,
                                           const OperatingPoint& op, double delta,
                                           const Baths& baths,
                                           const QuadratureConfig& cfg) {
    validate(cfg);
    if (!is_stable(build_drift_matrix(d, op, delta)))
        throw std::runtime_error("unstable operating point");
    auto thermal_tf = [&](double w) { return response_at(d, op, delta, w).q_t.value(); };
    auto squeeze_tf = [&](double w) { return response_at(d, op, delta, w).q_s_tf.value(); };
    return detail::variance_from_transfers(thermal_tf, squeeze_tf, d, baths, cfg);
}

}  // namespace rcsq
