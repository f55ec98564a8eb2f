#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "topophase/clifford.hpp"
#include "topophase/fields.hpp"

namespace topophase {

using Vector3cd = Eigen::Vector3cd;
using Matrix3cd = Eigen::Matrix3cd;

/// One spacetime sample of the massive vector field in its first-order form:
/// the field B_mu and its antisymmetric strength G_{mu nu} (lower indices).
struct ProcaSample {
    Vector3cd B = Vector3cd::Zero();
    Matrix3cd G = Matrix3cd::Zero();
    double mass = 1.0;
};

/// Split into the two spin-projection fields phi_{+mu}, phi_{-mu} with
///   B_mu = (phi_+ + phi_-)_mu / sqrt(2m),
///   G_{mu nu} = sqrt(m/2) eps_{mu nu a} (phi_+ - phi_-)^a.
/// The epsilon-contraction sign of the inversion is fixed by a startup
/// self-test on pseudo-random data, never hand-coded. Rejects
/// non-antisymmetric G.
std::pair<Vector3cd, Vector3cd> proca_decompose(const CliffordRep& rep,
                                                const ProcaSample& sample);

/// Inverse of proca_decompose.
ProcaSample proca_compose(const CliffordRep& rep, const Vector3cd& phi_plus,
                          const Vector3cd& phi_minus, double mass);

/// Conserved current of the phi± form, as a real covector:
///   j_mu = i sum_{s'} (s'/2) eps_{mu nu a} (phi*^a phi^nu - phi^a phi*^nu).
/// Vanishes when both fields are real.
Eigen::Vector3d current_spin1(const CliffordRep& rep, const Vector3cd& phi_plus,
                              const Vector3cd& phi_minus);

/// Max-entry residual of the dual-current identity
///   eps_{mu nu a} j^a = -i sum_{s'} s' (phi*_mu phi_nu - phi*_nu phi_mu),
/// which must vanish for arbitrary fields.
double dual_current_identity(const CliffordRep& rep, const Vector3cd& phi_plus,
                             const Vector3cd& phi_minus);

/// Electromagnetic moments of the spin-1 field:
/// mu_m = e (kappa_m + tau_m) / 2, Q_e = -e (kappa_m - tau_m) / m^2.
/// A topological phase exists only in the quadrupole-free case kappa = tau.
struct Spin1Moments {
    double kappa_m = 0.0;
    double tau_m = 0.0;
    double kappa_e = 0.0;
    double e = 0.0;
    double m = 0.0;
    double mu_m = 0.0;
    double Q_e = 0.0;
    bool quadrupole_free = false;
};
Spin1Moments moments_spin1(double kappa_m, double tau_m, double e, double m,
                           double kappa_e = 0.0);

/// Spin-1 phase: AC -> s' (kappa/m) Lambda;  HMW -> -s' (kappa/m) Lambda.
double spin1_phase(int s_prime, double kappa, double m, double lambda,
                   Coupling kind);

}  // namespace topophase
