#include "topophase/clifford.hpp"

#include <cmath>

namespace topophase {

namespace {

using Matrix2cd = Eigen::Matrix2cd;
constexpr std::complex<double> I{0.0, 1.0};

Matrix2cd pauli(int i) {
    Matrix2cd m;
    switch (i) {
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -I, I, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix4cd block_diag(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd m = Matrix4cd::Zero();
    m.block<2, 2>(0, 0) = a;
    m.block<2, 2>(2, 2) = b;
    return m;
}

int permutation_sign(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    int sign = 1;
    if (a > b) { std::swap(a, b); sign = -sign; }
    if (b > c) { std::swap(b, c); sign = -sign; }
    if (a > b) { std::swap(a, b); sign = -sign; }
    return sign;
}

double max_abs(const Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

CliffordRep build_representation() {
    CliffordRep rep;
    const Matrix2cd s1 = pauli(1), s2 = pauli(2), s3 = pauli(3);
    rep.gamma[0] = block_diag(s3, s3);
    rep.gamma[1] = block_diag(I * s2, -I * s2);
    rep.gamma[2] = block_diag(I * s1, I * s1);
    rep.s_op = -I * rep.gamma[0] * rep.gamma[1] * rep.gamma[2];

    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                rep.eps_upper[a][b][c] = permutation_sign(a, b, c);
                rep.eps_lower[a][b][c] = rep.metric[a] * rep.metric[b] *
                                         rep.metric[c] * rep.eps_upper[a][b][c];
            }
    return rep;
}

ProductIdentityReport verify_product_identity(const CliffordRep& rep) {
    ProductIdentityReport report;
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
            const double g = (mu == nu) ? rep.metric[mu] : 0.0;
            Matrix4cd rhs = g * Matrix4cd::Identity();
            for (int lam = 0; lam < 3; ++lam) {
                const double e = rep.eps_upper[mu][nu][lam];
                if (e != 0.0) rhs += I * e * rep.s_op * rep.gamma_lower(lam);
            }
            const double r = max_abs(rep.gamma[mu] * rep.gamma[nu] - rhs);
            report.residual[mu][nu] = r;
            report.max_residual = std::max(report.max_residual, r);
        }
    return report;
}

Matrix4cd sigma(const CliffordRep& rep, int mu, int nu) {
    if (mu < 0 || mu > 2 || nu < 0 || nu > 2)
        throw ValidationError("sigma indices must lie in {0,1,2}");
    return 0.5 * I *
           (rep.gamma[mu] * rep.gamma[nu] - rep.gamma[nu] * rep.gamma[mu]);
}

Covector3 dualize(const CliffordRep& rep, const Matrix3d& F_upper) {
    const double scale = F_upper.cwiseAbs().maxCoeff();
    if ((F_upper + F_upper.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * (1.0 + scale))
        throw ValidationError("dualize requires an antisymmetric tensor");

    Covector3 v{};
    for (int mu = 0; mu < 3; ++mu) {
        double sum = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                sum += rep.eps_lower[mu][a][b] * F_upper(a, b);
        v[mu] = 0.5 * sum;
    }
    return v;
}

Matrix3d tensor_dual(const CliffordRep& rep, const Covector3& V) {
    Matrix3d F = Matrix3d::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int mu = 0; mu < 3; ++mu)
                F(a, b) += kDoubleDualSign * rep.eps_upper[a][b][mu] * V[mu];
    return F;
}

Matrix3d field_tensor(double E1, double E2, double B3) {
    Matrix3d F;
    F << 0, -E1, -E2,
         E1, 0, -B3,
         E2, B3, 0;
    return F;
}

Matrix3d dual_field_tensor(double B1, double B2, double E3) {
    Matrix3d F;
    F << 0, -B1, -B2,
         B1, 0, E3,
         B2, -E3, 0;
    return F;
}

}  // namespace topophase
