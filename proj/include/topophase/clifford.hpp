#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "topophase/common.hpp"

namespace topophase {

using Matrix4cd = Eigen::Matrix4cd;
using Matrix3d = Eigen::Matrix3d;
using Covector3 = std::array<double, 3>;

/// The 2+1-dimensional Dirac algebra in a fixed four-component
/// representation, together with the metric and epsilon conventions used
/// throughout:
///
///   g_{mu nu} = diag(1, -1, -1),   eps^{012} = +1,
///   gamma^0 = diag(s3, s3),  gamma^1 = diag(i s2, -i s2),
///   gamma^2 = diag(i s1, i s1),
///   s_op = -i gamma^0 gamma^1 gamma^2 = diag(1, 1, -1, -1).
///
/// eps with lower indices is obtained by metric lowering computed once at
/// construction, never hand-derived.
struct CliffordRep {
    std::array<Matrix4cd, 3> gamma;  // upper-index gamma^mu
    Matrix4cd s_op;
    std::array<double, 3> metric{1.0, -1.0, -1.0};  // diagonal of g
    double eps_upper[3][3][3] = {};
    double eps_lower[3][3][3] = {};

    /// gamma with the index lowered: gamma_mu = g_{mu mu} gamma^mu.
    Matrix4cd gamma_lower(int mu) const { return metric[mu] * gamma[mu]; }
};

CliffordRep build_representation();

/// Max entrywise deviation of gamma^mu gamma^nu from
/// g^{mu nu} I + i s_op eps^{mu nu lambda} gamma_lambda, for every index pair.
struct ProductIdentityReport {
    double residual[3][3] = {};
    double max_residual = 0.0;
};
ProductIdentityReport verify_product_identity(const CliffordRep& rep);

/// sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu].
Matrix4cd sigma(const CliffordRep& rep, int mu, int nu);

/// Dual of an antisymmetric upper-index tensor: V_mu = (1/2) eps_{mu a b} F^{a b}.
/// Rejects non-antisymmetric input.
Covector3 dualize(const CliffordRep& rep, const Matrix3d& F_upper);

/// Inverse map, F^{a b} = kDoubleDualSign * eps^{a b mu} V_mu, so that
/// tensor_dual(dualize(F)) == F. The sign is fixed by brute-force
/// contraction of eps with eps in this metric (verified by test).
inline constexpr double kDoubleDualSign = 1.0;
Matrix3d tensor_dual(const CliffordRep& rep, const Covector3& V);

/// Field tensor F^{mu nu} for in-plane E and normal B:
/// F^{01} = -E1, F^{02} = -E2, F^{12} = -B3.
Matrix3d field_tensor(double E1, double E2, double B3);

/// Dual-form field tensor for in-plane B and normal E:
/// tF^{01} = -B1, tF^{02} = -B2, tF^{12} = +E3.
Matrix3d dual_field_tensor(double B1, double B2, double E3);

}  // namespace topophase
