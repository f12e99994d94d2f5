#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "rcsq/linear_response.hpp"
#include "rcsq/params.hpp"

namespace rcsq {

/// Linear map from the waveguide momentum fluctuation and the input field to
/// the outgoing field at one frequency, plus the denominator of the inverse
/// map that reconstructs the momentum from the measured y quadrature.
struct OutputTransfer {
    double omega = 0;
    double omega_m = 0;
    Complex a_plus{0, 0};
    Complex a_minus_conj{0, 0};
    double j_coef = 0;
    Complex c_out_on_p{0, 0};    ///< coefficient of dP(omega) in dc_out(omega)
    Complex c_out_on_cin{0, 0};  ///< coefficient of c_in(omega)
    Complex recon_denominator{0, 0};
};

inline OutputTransfer output_transfer_at(const DerivedParams& d,
                                         const OperatingPoint& op, double delta,
                                         double omega) {
    if (omega == 0.0)
        throw std::invalid_argument("output transfer undefined at omega = 0");
    const Complex i(0.0, 1.0);
    const double ke_eff = d.kappa_e + d.kappa_om * op.q_s;
    const double root2ke = std::sqrt(2.0 * d.kappa_e);
    const Complex u = -d.kappa_om * op.c_s + 0.5 * d.eta * d.eps_tilde;
    const double j = root2ke * (1.0 + 0.5 * d.eta * op.q_s);
    const Complex iwm_over_w = i * d.omega_m / omega;

    OutputTransfer t;
    t.omega = omega;
    t.omega_m = d.omega_m;
    t.a_plus = ke_eff - i * (delta + omega);
    t.a_minus_conj = ke_eff + i * (delta - omega);
    if (t.a_minus_conj == Complex(0.0, 0.0))
        throw std::runtime_error("cavity response vanished");  // impossible for kappa_e > 0
    t.j_coef = j;
    t.c_out_on_p = j * iwm_over_w * u / t.a_minus_conj +
                   0.5 * d.eta * root2ke * op.c_s * iwm_over_w;
    t.c_out_on_cin = j * j / t.a_minus_conj;
    t.recon_denominator =
        0.5 * d.eta * root2ke * (std::conj(op.c_s) - op.c_s) * t.a_plus * t.a_minus_conj +
        j * (t.a_minus_conj * std::conj(u) - t.a_plus * u);
    return t;
}

/// y quadrature of the output field for given momentum and input amplitudes.
/// Needs the transfers at both +omega and -omega: the daggered output at
/// -omega folds the conjugate coefficients back onto dP(omega) and c_in+(-omega).
inline Complex output_y_quadrature(const OutputTransfer& at_plus,
                                   const OutputTransfer& at_minus, Complex dp,
                                   Complex cin, Complex cin_dag) {
    const Complex i(0.0, 1.0);
    return i * ((std::conj(at_minus.c_out_on_p) - at_plus.c_out_on_p) * dp +
                std::conj(at_minus.c_out_on_cin) * cin_dag -
                at_plus.c_out_on_cin * cin);
}

/// Inverts the transduction: recovers dP(omega) from the measured y
/// quadrature and the input-field amplitudes. Fails when the reactive
/// channel carries no momentum information.
inline Complex reconstruct_momentum(const OutputTransfer& t, Complex y_out,
                                    Complex cin, Complex cin_dag) {
    const Complex i(0.0, 1.0);
    const Complex aa = t.a_plus * t.a_minus_conj;
    const double floor = 1e-12 * std::abs(t.j_coef * aa);
    if (std::abs(t.recon_denominator) <= floor)
        throw std::runtime_error(
            "reconstruction undefined (eta = 0 or degenerate operating point)");
    const Complex numer =
        aa * y_out - t.j_coef * t.j_coef * i *
                         (t.a_minus_conj * cin_dag - t.a_plus * cin);
    return -(t.omega / t.omega_m) * numer / t.recon_denominator;
}

}  // namespace rcsq
