#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "rcsq/constants.hpp"

namespace rcsq {

/// Experimental knobs for a nano waveguide reactively coupled to a microdisk
/// resonator, as a lab would quote them. Every frequency-like member is
/// angular (rad/s) except where the name says otherwise.
///
/// Defaults are the device of the reference experiment: a 2 pg silicon
/// waveguide at 2pi x 25.45 MHz coupled to a microdisk driven at 1564.25 nm.
struct PhysicalParams {
    double wavelength_laser = 1564.25;             ///< drive laser wavelength [nm]
    double pump_power = 20e-6;                     ///< incident pump power [W]
    double mass = 2e-15;                           ///< waveguide effective mass [kg]
    double mech_freq = 2 * constants::pi * 25.45e6;///< mechanical frequency [rad/s]
    double quality_factor = 5000.0;                ///< mechanical Q = mech_freq/gamma_m
    double kappa_e_ratio = 0.05;                   ///< kappa_e / mech_freq
    double kappa_om_slope = -2 * constants::pi * 26.6e6; ///< reactive slope [rad/s per nm], before zero-point scaling
    double detuning = 2 * constants::pi * 25.45e6; ///< resonator minus laser frequency [rad/s]
    double squeeze_r = 1.0;                        ///< squeezing parameter of the input field
    double squeeze_phi = 0.0;                      ///< squeezing phase [rad]
    double bandwidth_ratio = 5.0;                  ///< squeezed-field bandwidth / kappa_e
    double temperature = 1e-3;                     ///< waveguide bath temperature [K]
    double dispersive_g = 0.0;                     ///< dispersive coupling [rad/s]; must be 0
};

/// Internal rad/s-domain quantities every formula consumes. Produced by
/// derive_params(); fields are plain so tests can build edge cases directly.
struct DerivedParams {
    double omega_m = 0;    ///< mechanical frequency [rad/s]
    double omega_l = 0;    ///< laser frequency [rad/s]
    double gamma_m = 0;    ///< mechanical damping [rad/s]
    double kappa_e = 0;    ///< external photon decay at rest [rad/s]
    double kappa_om = 0;   ///< reactive coupling per unit dimensionless displacement [rad/s]
    double eta = 0;        ///< kappa_om / kappa_e
    double eps_l = 0;      ///< drive amplitude sqrt(power/(hbar*omega_l)) [sqrt(photons/s)]
    double eps_tilde = 0;  ///< sqrt(2*kappa_e) * eps_l
    double big_gamma = 0;  ///< squeezed-field bandwidth [rad/s]
    double n_sq = 0;       ///< N = sinh^2(r)
    std::complex<double> m_sq{0, 0};  ///< M = sinh(r)cosh(r)e^{i phi}
};

namespace detail {

inline void require_positive(double v, const char* field) {
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(field) + " must be positive");
}

inline void require_nonnegative(double v, const char* field) {
    if (!(v >= 0.0))
        throw std::invalid_argument(std::string(field) + " must be nonnegative");
}

}  // namespace detail

/// Converts user-facing parameters to the internal angular-frequency set.
/// Pure; throws std::invalid_argument on any violated invariant.
inline DerivedParams derive_params(const PhysicalParams& p) {
    if (p.dispersive_g != 0.0)
        throw std::invalid_argument("dispersive coupling unsupported");
    detail::require_positive(p.wavelength_laser, "wavelength_laser");
    detail::require_positive(p.mass, "mass");
    detail::require_positive(p.mech_freq, "mech_freq");
    detail::require_positive(p.quality_factor, "quality_factor");
    detail::require_positive(p.kappa_e_ratio, "kappa_e_ratio");
    detail::require_positive(p.bandwidth_ratio, "bandwidth_ratio");
    detail::require_nonnegative(p.pump_power, "pump_power");
    detail::require_nonnegative(p.temperature, "temperature");
    detail::require_nonnegative(p.squeeze_r, "squeeze_r");

    DerivedParams d;
    d.omega_m = p.mech_freq;
    d.omega_l = 2.0 * constants::pi * constants::c_light / (p.wavelength_laser * 1e-9);
    d.gamma_m = p.mech_freq / p.quality_factor;
    d.kappa_e = p.kappa_e_ratio * p.mech_freq;
    // Zero-point scaling: the raw slope is per nm of displacement, the
    // dimensionless displacement Q is in units of sqrt(hbar/(2 m omega_m)).
    const double zp_length_nm =
        std::sqrt(constants::hbar / (2.0 * p.mass * p.mech_freq)) * 1e9;
    d.kappa_om = p.kappa_om_slope * zp_length_nm;
    d.eta = d.kappa_om / d.kappa_e;
    d.eps_l = std::sqrt(p.pump_power / (constants::hbar * d.omega_l));
    d.eps_tilde = std::sqrt(2.0 * d.kappa_e) * d.eps_l;
    d.big_gamma = p.bandwidth_ratio * d.kappa_e;
    const double sh = std::sinh(p.squeeze_r);
    const double ch = std::cosh(p.squeeze_r);
    d.n_sq = sh * sh;
    d.m_sq = sh * ch * std::polar(1.0, p.squeeze_phi);
    return d;
}

}  // namespace rcsq
