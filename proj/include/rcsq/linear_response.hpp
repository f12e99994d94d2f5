#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>

#include "rcsq/params.hpp"

namespace rcsq {

using Complex = std::complex<double>;

/// The steady-state data the linearized dynamics depend on.
struct OperatingPoint {
    double q_s = 0;        ///< steady displacement (dimensionless)
    Complex c_s{0, 0};     ///< steady intracavity amplitude
};

/// Linearized drift of the fluctuation vector (dQ, dP, dc, dc+), together
/// with the coefficients multiplying the noise inputs (xi, c_in, c_in+) in
/// each row. Momentum couples to the squeezed input through the steady
/// field; the cavity rows couple through J = sqrt(2*kappa_e)(1 + eta*q_s/2).
struct DriftMatrix {
    Eigen::Matrix4cd z;
    double j_coef = 0;             ///< J, real
    Complex mom_on_cin{0, 0};      ///< momentum-row coefficient of c_in
    Complex mom_on_cin_dag{0, 0};  ///< momentum-row coefficient of c_in+
};

inline DriftMatrix build_drift_matrix(const DerivedParams& d,
                                      const OperatingPoint& op, double delta) {
    const Complex i(0.0, 1.0);
    const double ke_eff = d.kappa_e + d.kappa_om * op.q_s;
    const Complex cavity_pole = ke_eff + i * delta;
    const Complex u = -d.kappa_om * op.c_s + 0.5 * d.eta * d.eps_tilde;
    const double root2ke = std::sqrt(2.0 * d.kappa_e);

    DriftMatrix m;
    m.z.setZero();
    m.z(0, 1) = d.omega_m;
    m.z(1, 0) = -d.omega_m;
    m.z(1, 1) = -d.gamma_m;
    m.z(1, 2) = i * d.eta * d.eps_tilde;
    m.z(1, 3) = -i * d.eta * d.eps_tilde;
    m.z(2, 0) = u;
    m.z(2, 2) = -cavity_pole;
    m.z(3, 0) = std::conj(u);
    m.z(3, 3) = -std::conj(cavity_pole);

    m.j_coef = root2ke * (1.0 + 0.5 * d.eta * op.q_s);
    m.mom_on_cin = -i * d.eta * root2ke * std::conj(op.c_s);
    m.mom_on_cin_dag = i * d.eta * root2ke * op.c_s;
    return m;
}

/// True iff every drift eigenvalue lies strictly in the left half-plane.
/// Marginal spectra (Re = 0) count as unstable.
inline bool is_stable(const DriftMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m.z, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("drift eigenvalue computation failed");
    const double scale = std::max(1.0, m.z.cwiseAbs().maxCoeff());
    double max_re = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k)
        max_re = std::max(max_re, solver.eigenvalues()(k).real());
    return max_re < -1e-12 * scale;
}

/// Frequency-domain response at one omega: the cavity factors, the momentum
/// transfer functions for thermal (p_t) and squeezed (p_s) inputs, and the
/// position transfers q_t, q_s obtained by dividing by omega (undefined at
/// omega = 0, where the momentum transfers stay finite and p_t vanishes).
struct TransferPoint {
    double omega = 0;
    Complex a_plus{0, 0};        ///< cavity response at +omega
    Complex a_minus_conj{0, 0};  ///< conjugated cavity response at -omega
    Complex r_mech{0, 0};        ///< bare mechanical response
    Complex d_det{0, 0};         ///< coupled-system determinant
    double j_coef = 0;
    Complex u_coef{0, 0};
    Complex p_t{0, 0};
    Complex p_s{0, 0};
    std::optional<Complex> q_t;
    std::optional<Complex> q_s_tf;
};

inline TransferPoint response_at(const DerivedParams& d, const OperatingPoint& op,
                                 double delta, double omega) {
    if (!std::isfinite(omega))
        throw std::invalid_argument("omega must be finite");
    const Complex i(0.0, 1.0);
    const double ke_eff = d.kappa_e + d.kappa_om * op.q_s;
    const double root2ke = std::sqrt(2.0 * d.kappa_e);

    TransferPoint t;
    t.omega = omega;
    t.a_plus = ke_eff - i * (delta + omega);
    t.a_minus_conj = ke_eff + i * (delta - omega);
    t.r_mech = d.omega_m * d.omega_m - omega * omega - i * d.gamma_m * omega;
    t.u_coef = -d.kappa_om * op.c_s + 0.5 * d.eta * d.eps_tilde;
    t.j_coef = root2ke * (1.0 + 0.5 * d.eta * op.q_s);

    const Complex aa = t.a_plus * t.a_minus_conj;
    t.d_det = aa * t.r_mech -
              i * d.eta * d.eps_tilde * d.omega_m *
                  (t.a_plus * t.u_coef - t.a_minus_conj * std::conj(t.u_coef));
    if (t.d_det == Complex(0.0, 0.0))
        throw std::runtime_error("response pole");

    t.p_t = -i * omega * aa / t.d_det;
    t.p_s = d.eta * (omega * d.eps_tilde * t.a_plus * t.j_coef / t.d_det -
                     i * root2ke * std::conj(op.c_s) * t.p_t);
    if (omega != 0.0) {
        const Complex iwm_over_w = i * d.omega_m / omega;
        t.q_t = iwm_over_w * t.p_t;
        t.q_s_tf = iwm_over_w * t.p_s;
    }
    return t;
}

/// Momentum-row response obtained purely by numeric inversion of the drift
/// system; cross-validates the analytic route.
struct OracleResponse {
    Complex p_t{0, 0};
    Complex p_s{0, 0};
    Complex cin_dag_coef{0, 0};  ///< coefficient of c_in+(-omega)
};

inline OracleResponse response_oracle(const DriftMatrix& m, double omega) {
    const Complex i(0.0, 1.0);
    Eigen::Matrix4cd sys = -i * omega * Eigen::Matrix4cd::Identity() - m.z;
    Eigen::FullPivLU<Eigen::Matrix4cd> lu(sys);
    if (!lu.isInvertible())
        throw std::runtime_error("response pole");
    const Eigen::Matrix4cd v = lu.inverse();

    OracleResponse r;
    r.p_t = v(1, 1);
    r.p_s = v(1, 1) * m.mom_on_cin + v(1, 2) * m.j_coef;
    r.cin_dag_coef = v(1, 1) * m.mom_on_cin_dag + v(1, 3) * m.j_coef;
    return r;
}

}  // namespace rcsq
