#include "topophase/currents.hpp"

#include <cmath>
#include <random>

namespace topophase {

namespace {

Vector3cd raise_index(const CliffordRep& rep, const Vector3cd& lower) {
    Vector3cd upper;
    for (int mu = 0; mu < 3; ++mu) upper[mu] = rep.metric[mu] * lower[mu];
    return upper;
}

Matrix3cd strength_from_diff(const CliffordRep& rep, const Vector3cd& diff_lower,
                             double mass) {
    const Vector3cd diff_upper = raise_index(rep, diff_lower);
    Matrix3cd g = Matrix3cd::Zero();
    const double c = std::sqrt(0.5 * mass);
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu)
            for (int a = 0; a < 3; ++a)
                g(mu, nu) += c * rep.eps_lower[mu][nu][a] * diff_upper[a];
    return g;
}

Vector3cd diff_from_strength(const CliffordRep& rep, const Matrix3cd& g,
                             double mass, double sign) {
    Vector3cd diff_upper = Vector3cd::Zero();
    for (int b = 0; b < 3; ++b)
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu)
                diff_upper[b] += rep.eps_upper[mu][nu][b] * g(mu, nu);
    diff_upper *= sign / (2.0 * std::sqrt(0.5 * mass));
    return raise_index(rep, diff_upper);  // lower again (metric is diagonal)
}

// The inversion sign is the one under which compose(decompose(.)) is the
// identity on pseudo-random data; determined once, at first use.
double inversion_sign(const CliffordRep& rep) {
    static const double sign = [] {
        const CliffordRep probe = build_representation();
        std::mt19937_64 rng(0x70b0bfa5eull);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Vector3cd diff;
        for (int i = 0; i < 3; ++i) diff[i] = std::complex<double>(u(rng), u(rng));
        const Matrix3cd g = strength_from_diff(probe, diff, 1.0);
        const double plus =
            (diff_from_strength(probe, g, 1.0, 1.0) - diff).cwiseAbs().maxCoeff();
        const double minus =
            (diff_from_strength(probe, g, 1.0, -1.0) - diff).cwiseAbs().maxCoeff();
        return plus <= minus ? 1.0 : -1.0;
    }();
    (void)rep;
    return sign;
}

}  // namespace

std::pair<Vector3cd, Vector3cd> proca_decompose(const CliffordRep& rep,
                                                const ProcaSample& sample) {
    if (sample.mass <= 0.0) throw ValidationError("mass must be positive");
    const double scale = sample.G.cwiseAbs().maxCoeff();
    if ((sample.G + sample.G.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * (1.0 + scale))
        throw ValidationError("field strength must be antisymmetric");

    const Vector3cd sum = std::sqrt(2.0 * sample.mass) * sample.B;
    const Vector3cd diff =
        diff_from_strength(rep, sample.G, sample.mass, inversion_sign(rep));
    return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

ProcaSample proca_compose(const CliffordRep& rep, const Vector3cd& phi_plus,
                          const Vector3cd& phi_minus, double mass) {
    if (mass <= 0.0) throw ValidationError("mass must be positive");
    ProcaSample sample;
    sample.mass = mass;
    sample.B = (phi_plus + phi_minus) / std::sqrt(2.0 * mass);
    sample.G = strength_from_diff(rep, phi_plus - phi_minus, mass);
    return sample;
}

Eigen::Vector3d current_spin1(const CliffordRep& rep, const Vector3cd& phi_plus,
                              const Vector3cd& phi_minus) {
    Eigen::Vector3d j = Eigen::Vector3d::Zero();
    for (int sp = 0; sp < 2; ++sp) {
        const double s_prime = sp == 0 ? 1.0 : -1.0;
        const Vector3cd up = raise_index(rep, sp == 0 ? phi_plus : phi_minus);
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu)
                for (int a = 0; a < 3; ++a) {
                    const double e = rep.eps_lower[mu][nu][a];
                    if (e != 0.0)
                        j[mu] -= s_prime * e * std::imag(std::conj(up[a]) * up[nu]);
                }
    }
    return j;
}

double dual_current_identity(const CliffordRep& rep, const Vector3cd& phi_plus,
                             const Vector3cd& phi_minus) {
    const Eigen::Vector3d j = current_spin1(rep, phi_plus, phi_minus);
    Eigen::Vector3d j_upper;
    for (int mu = 0; mu < 3; ++mu) j_upper[mu] = rep.metric[mu] * j[mu];

    double residual = 0.0;
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
            double lhs = 0.0;
            for (int a = 0; a < 3; ++a)
                lhs += rep.eps_lower[mu][nu][a] * j_upper[a];
            double rhs = 0.0;
            for (int sp = 0; sp < 2; ++sp) {
                const double s_prime = sp == 0 ? 1.0 : -1.0;
                const Vector3cd& phi = sp == 0 ? phi_plus : phi_minus;
                rhs += 2.0 * s_prime * std::imag(std::conj(phi[mu]) * phi[nu]);
            }
            residual = std::max(residual, std::abs(lhs - rhs));
        }
    return residual;
}

Spin1Moments moments_spin1(double kappa_m, double tau_m, double e, double m,
                           double kappa_e) {
    if (m <= 0.0) throw ValidationError("mass must be positive");
    Spin1Moments moments;
    moments.kappa_m = kappa_m;
    moments.tau_m = tau_m;
    moments.kappa_e = kappa_e;
    moments.e = e;
    moments.m = m;
    moments.mu_m = e * (kappa_m + tau_m) / 2.0;
    moments.Q_e = -e * (kappa_m - tau_m) / (m * m);
    moments.quadrupole_free = (kappa_m == tau_m);
    return moments;
}

double spin1_phase(int s_prime, double kappa, double m, double lambda,
                   Coupling kind) {
    if (s_prime != 1 && s_prime != -1)
        throw ValidationError("s_prime must be +1 or -1");
    if (m <= 0.0) throw ValidationError("mass must be positive");
    const double theta = s_prime * (kappa / m) * lambda;
    return kind == Coupling::AC ? theta : -theta;
}

}  // namespace topophase
