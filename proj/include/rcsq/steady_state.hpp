#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rcsq/linear_response.hpp"
#include "rcsq/params.hpp"

namespace rcsq {

/// Classical working point of the driven system. p_s is identically zero;
/// q_s is the real root of the eliminated steady-state polynomial that is
/// dynamically stable and closest to the undriven solution.
struct SteadyState {
    double q_s = 0;
    double p_s = 0;
    Complex c_s{0, 0};
    std::vector<double> all_real_roots;
    bool multistable = false;
    bool linearization_valid = false;  ///< |c_s| >= 10

    operator OperatingPoint() const { return {q_s, c_s}; }
};

namespace detail {

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 = 0, closed form, degenerate
// leading coefficients handled by degree reduction.
inline std::vector<double> solve_real_cubic(double c3, double c2, double c1, double c0) {
    std::vector<double> roots;
    const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
    if (scale == 0.0) return roots;  // identically zero: treat as rootless

    if (std::abs(c3) <= scale * 1e-300) {
        if (std::abs(c2) <= scale * 1e-300) {
            if (c1 != 0.0) roots.push_back(-c0 / c1);
            return roots;
        }
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            // Citardauq form avoids cancellation for the small root.
            const double q = -0.5 * (c1 + std::copysign(s, c1));
            if (q != 0.0) roots.push_back(c0 / q);
            roots.push_back(q / c2);
            if (disc == 0.0 && roots.size() == 2) roots.pop_back();
        }
        return roots;
    }

    const double p = c2 / c3;
    const double q = c1 / c3;
    const double r = c0 / c3;
    // Depressed cubic t^3 + at + b with x = t - p/3.
    const double a = q - p * p / 3.0;
    const double b = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    const double shift = -p / 3.0;
    const double disc = 0.25 * b * b + a * a * a / 27.0;

    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-0.5 * b + s);
        const double v = std::cbrt(-0.5 * b - s);
        roots.push_back(u + v + shift);
    } else if (disc == 0.0) {
        const double u = std::cbrt(-0.5 * b);
        roots.push_back(2.0 * u + shift);
        if (u != 0.0) roots.push_back(-u + shift);
    } else {
        const double m = 2.0 * std::sqrt(-a / 3.0);
        const double theta = std::acos(std::clamp(3.0 * b / (a * m), -1.0, 1.0)) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(theta - 2.0 * constants::pi * k / 3.0) + shift);
    }
    return roots;
}

}  // namespace detail

/// Intracavity amplitude implied by a candidate displacement.
inline Complex steady_amplitude(const DerivedParams& d, double delta, double q) {
    const Complex denom(d.kappa_e + d.kappa_om * q, delta);
    const double num = (1.0 + 0.5 * d.eta * q) * d.eps_tilde;
    if (denom == Complex(0.0, 0.0)) {
        if (num == 0.0) return {0.0, 0.0};
        throw std::runtime_error("degenerate cavity denominator");
    }
    return num / denom;
}

/// Solves the coupled steady-state equations at a given detuning.
///
/// Eliminating the amplitude leaves a real polynomial of degree <= 3 in the
/// displacement. All real roots are found in closed form, polished by Newton
/// steps, and the stable root of smallest magnitude is selected (the branch
/// an adiabatic turn-on of the pump reaches from zero).
inline SteadyState solve_steady_state(const DerivedParams& d, double delta) {
    if (!std::isfinite(delta))
        throw std::invalid_argument("detuning must be finite");

    const double ke2 = d.kappa_e * d.kappa_e;
    const double drive = d.eps_tilde * d.eps_tilde / d.omega_m;  // eps~^2 / omega_m
    const double c3 = ke2 * d.eta * d.eta;
    const double c2 = 2.0 * ke2 * d.eta;
    const double c1 = ke2 + delta * delta - d.eta * d.eta * delta * drive;
    const double c0 = -2.0 * d.eta * delta * drive;

    auto poly = [&](double q) { return ((c3 * q + c2) * q + c1) * q + c0; };
    auto dpoly = [&](double q) { return (3.0 * c3 * q + 2.0 * c2) * q + c1; };

    std::vector<double> roots = detail::solve_real_cubic(c3, c2, c1, c0);
    if (roots.empty())
        throw std::runtime_error("no real root");

    for (double& q : roots) {
        for (int it = 0; it < 8; ++it) {
            const double dp = dpoly(q);
            if (dp == 0.0) break;
            const double step = poly(q) / dp;
            q -= step;
            if (std::abs(step) <= 1e-12 * (std::abs(q) + 1.0)) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) {
                                return std::abs(x - y) <= 1e-9 * (std::abs(x) + std::abs(y) + 1.0);
                            }),
                roots.end());

    SteadyState best;
    best.all_real_roots = roots;
    best.multistable = roots.size() > 1;

    bool found = false;
    for (double q : roots) {
        try {
            const Complex c = steady_amplitude(d, delta, q);
            if (!is_stable(build_drift_matrix(d, {q, c}, delta))) continue;
            if (!found || std::abs(q) < std::abs(best.q_s)) {
                best.q_s = q;
                best.c_s = c;
                found = true;
            }
        } catch (const std::exception&) {
            // degenerate roots (vanishing cavity denominator) are unphysical
        }
    }
    if (!found)
        throw std::runtime_error("no stable root");
    best.p_s = 0.0;
    best.linearization_valid = std::abs(best.c_s) >= 10.0;
    return best;
}

}  // namespace rcsq
