#pragma once

#include <cmath>
#include <complex>

#include "rcsq/constants.hpp"
#include "rcsq/params.hpp"

namespace rcsq {

/// Finite-bandwidth squeezed vacuum entering through the waveguide, centered
/// one mechanical frequency above the drive (sideband-resolved lock).
struct SqueezedBath {
    double n_sq = 0;                 ///< N = sinh^2(r)
    std::complex<double> m_sq{0, 0};   ///< M = sinh(r)cosh(r)e^{i phi}
    double big_gamma = 0;            ///< Lorentzian bandwidth [rad/s]
    double center = 0;               ///< center offset from the laser [rad/s]
};

/// Quantum Brownian environment of the waveguide.
struct ThermalBath {
    double gamma_m = 0;      ///< mechanical damping [rad/s]
    double omega_m = 0;      ///< mechanical frequency [rad/s]
    double temperature = 0;  ///< [K]
};

struct Baths {
    ThermalBath thermal;
    SqueezedBath squeezed;
};

inline SqueezedBath squeezed_bath(const DerivedParams& d) {
    return {d.n_sq, d.m_sq, d.big_gamma, d.omega_m};
}

inline ThermalBath thermal_bath(const DerivedParams& d, double temperature) {
    return {d.gamma_m, d.omega_m, temperature};
}

inline Baths make_baths(const DerivedParams& d, double temperature) {
    return {thermal_bath(d, temperature), squeezed_bath(d)};
}

/// Lorentzian filter G^2/(G^2 + nu^2) of the squeezed field, in (0, 1].
inline double lorentz_weight(const SqueezedBath& b, double nu) {
    const double g2 = b.big_gamma * b.big_gamma;
    return g2 / (g2 + nu * nu);
}

/// <c_in c_in> density at offset nu from the squeezing center.
inline std::complex<double> squeezed_correlator_mm(const SqueezedBath& b, double nu) {
    return b.m_sq * lorentz_weight(b, nu);
}

/// Quantum Brownian force density 2*gamma_m*(omega/omega_m)*[1 + coth(hbar*omega/2kT)].
///
/// Total function: the T = 0 and omega = 0 limits are built in, and coth
/// saturates to +-1 once the argument exceeds 30 (beyond double resolution).
inline double thermal_density(const ThermalBath& b, double omega) {
    const double pref = 2.0 * b.gamma_m / b.omega_m;
    if (b.temperature <= 0.0)
        return omega > 0.0 ? 2.0 * pref * omega : 0.0;
    const double kt2 = 2.0 * constants::k_boltzmann * b.temperature;
    if (omega == 0.0) return pref * kt2 / constants::hbar;  // series limit of omega*coth
    const double x = constants::hbar * omega / kt2;
    double coth;
    if (x > 30.0)
        coth = 1.0;
    else if (x < -30.0)
        coth = -1.0;
    else
        coth = 1.0 / std::tanh(x);
    return pref * omega * (1.0 + coth);
}

}  // namespace rcsq
