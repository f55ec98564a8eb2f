#include <doctest.h>

#include <complex>
#include <random>

#include "topophase/currents.hpp"

using namespace topophase;
using std::complex;

namespace {

std::mt19937_64 rng(20260807);

Vector3cd random_cvec() {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    Vector3cd v;
    for (int i = 0; i < 3; ++i) v[i] = complex<double>(u(rng), u(rng));
    return v;
}

Matrix3cd random_antisymmetric() {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    Matrix3cd g = Matrix3cd::Zero();
    g(0, 1) = complex<double>(u(rng), u(rng));
    g(0, 2) = complex<double>(u(rng), u(rng));
    g(1, 2) = complex<double>(u(rng), u(rng));
    g(1, 0) = -g(0, 1);
    g(2, 0) = -g(0, 2);
    g(2, 1) = -g(1, 2);
    return g;
}

}  // namespace

TEST_CASE("proca decomposition round trip") {
    const CliffordRep rep = build_representation();

    // zero fields decompose to zero
    const auto [zp, zm] = proca_decompose(rep, ProcaSample{});
    CHECK(zp.cwiseAbs().maxCoeff() == 0.0);
    CHECK(zm.cwiseAbs().maxCoeff() == 0.0);

    for (const double mass : {0.5, 1.0, 2.0})
        for (int draw = 0; draw < 30; ++draw) {
            ProcaSample sample;
            sample.B = random_cvec();
            sample.G = random_antisymmetric();
            sample.mass = mass;
            const auto [phi_p, phi_m] = proca_decompose(rep, sample);
            const ProcaSample back = proca_compose(rep, phi_p, phi_m, mass);
            CHECK((back.B - sample.B).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((back.G - sample.G).cwiseAbs().maxCoeff() < 1e-12);
        }

    // equal projections carry no strength
    const Vector3cd phi = random_cvec();
    CHECK(proca_compose(rep, phi, phi, 1.0).G.cwiseAbs().maxCoeff() == 0.0);

    Matrix3cd bad = Matrix3cd::Zero();
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(proca_decompose(rep, ProcaSample{Vector3cd::Zero(), bad, 1.0}),
                    ValidationError);
    CHECK_THROWS_AS(proca_decompose(rep, ProcaSample{Vector3cd::Zero(),
                                                     Matrix3cd::Zero(), -1.0}),
                    ValidationError);
}

TEST_CASE("spin-1 current is real, vanishes for real fields, flips with the projections") {
    const CliffordRep rep = build_representation();

    Vector3cd real_vec;
    real_vec << 0.3, -1.2, 0.8;
    CHECK(current_spin1(rep, real_vec, Vector3cd::Zero()).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK(current_spin1(rep, real_vec, 2.0 * real_vec).cwiseAbs().maxCoeff() ==
          0.0);

    const Vector3cd a = random_cvec();
    const Vector3cd b = random_cvec();
    const Eigen::Vector3d j = current_spin1(rep, a, b);
    const Eigen::Vector3d swapped = current_spin1(rep, b, a);
    CHECK((j + swapped).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("current matches a term-by-term contraction oracle") {
    const CliffordRep rep = build_representation();
    for (int draw = 0; draw < 25; ++draw) {
        const Vector3cd phi_p = random_cvec();
        const Vector3cd phi_m = random_cvec();
        const Eigen::Vector3d j = current_spin1(rep, phi_p, phi_m);

        // Independent evaluation: complex bilinear with the explicit i,
        // j_mu = i sum_{s'} (s'/2) eps_{mu nu a} (phi*^a phi^nu - phi^a phi*^nu).
        for (int mu = 0; mu < 3; ++mu) {
            complex<double> expect{0.0, 0.0};
            for (int sp = 0; sp < 2; ++sp) {
                const double s_prime = sp == 0 ? 1.0 : -1.0;
                const Vector3cd& phi = sp == 0 ? phi_p : phi_m;
                Vector3cd up;
                for (int i = 0; i < 3; ++i) up[i] = rep.metric[i] * phi[i];
                for (int nu = 0; nu < 3; ++nu)
                    for (int al = 0; al < 3; ++al)
                        expect += complex<double>(0.0, 1.0) * (s_prime / 2.0) *
                                  rep.eps_lower[mu][nu][al] *
                                  (std::conj(up[al]) * up[nu] -
                                   up[al] * std::conj(up[nu]));
            }
            CHECK(std::abs(expect.imag()) < 1e-13);
            CHECK(j[mu] == doctest::Approx(expect.real()).epsilon(1e-12));
        }
    }
}

TEST_CASE("dual current identity holds to 1e-12") {
    const CliffordRep rep = build_representation();
    CHECK(dual_current_identity(rep, Vector3cd::Zero(), Vector3cd::Zero()) == 0.0);
    for (int draw = 0; draw < 100; ++draw)
        CHECK(dual_current_identity(rep, random_cvec(), random_cvec()) < 1e-12);

    // pure plane-wave polarization in one projection
    Vector3cd pol;
    pol << complex<double>(0.0, 0.0), complex<double>(1.0, 0.0),
        complex<double>(0.0, 1.0);
    CHECK(dual_current_identity(rep, pol, Vector3cd::Zero()) < 1e-12);
}

TEST_CASE("spin-1 moments") {
    const Spin1Moments m1 = moments_spin1(1.0, 1.0, 1.0, 1.0);
    CHECK(m1.mu_m == 1.0);
    CHECK(m1.Q_e == 0.0);
    CHECK(m1.quadrupole_free);

    const Spin1Moments m0 = moments_spin1(0.7, -0.4, 0.0, 2.0);
    CHECK(m0.mu_m == 0.0);
    CHECK(m0.Q_e == 0.0);
    CHECK_FALSE(m0.quadrupole_free);

    const Spin1Moments m2 = moments_spin1(2.0, 0.0, 1.0, 1.0);
    CHECK(m2.mu_m == 1.0);
    CHECK(m2.Q_e == -2.0);
    CHECK_FALSE(m2.quadrupole_free);

    // Q_e = 0 exactly when kappa_m = tau_m
    for (double kappa : {-1.0, 0.0, 0.5, 2.0}) {
        CHECK(moments_spin1(kappa, kappa, 1.3, 0.7).Q_e == 0.0);
        CHECK(moments_spin1(kappa, kappa + 0.25, 1.3, 0.7).Q_e != 0.0);
    }
    CHECK_THROWS_AS(moments_spin1(1.0, 1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("spin-1 phase formula") {
    CHECK(spin1_phase(+1, 1.0, 2.0, 1.0, Coupling::AC) == 0.5);
    CHECK(spin1_phase(+1, 1.0, 2.0, 0.0, Coupling::AC) == 0.0);
    CHECK(spin1_phase(+1, 1.0, 2.0, 1.0, Coupling::HMW) == -0.5);
    CHECK(spin1_phase(-1, 1.0, 2.0, 1.0, Coupling::AC) == -0.5);
    CHECK_THROWS_AS(spin1_phase(0, 1.0, 1.0, 1.0, Coupling::AC), ValidationError);
    CHECK_THROWS_AS(spin1_phase(1, 1.0, -1.0, 1.0, Coupling::AC), ValidationError);
}
