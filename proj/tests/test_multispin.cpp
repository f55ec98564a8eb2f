#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "topophase/multispin.hpp"

using namespace topophase;

namespace {

// Stars-and-bars oracle: count nondecreasing digit strings of length n over
// {0,1,2,3} by direct enumeration.
std::size_t count_multisets(int n) {
    std::size_t total = 0;
    std::vector<int> digits(n, 0);
    while (true) {
        if (std::is_sorted(digits.begin(), digits.end())) ++total;
        int i = n - 1;
        while (i >= 0 && digits[i] == 3) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
    }
    return total;
}

// Exchange of two Dirac slots as a permutation on flat indices.
Eigen::MatrixXcd exchange_operator(int slot_a, int slot_b, int n_slots) {
    std::size_t dim = 1;
    for (int i = 0; i < n_slots; ++i) dim *= 4;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<int> digits(n_slots);
        std::size_t rest = col;
        for (int i = n_slots - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(rest % 4);
            rest /= 4;
        }
        std::swap(digits[slot_a], digits[slot_b]);
        std::size_t row = 0;
        for (int d : digits) row = row * 4 + static_cast<std::size_t>(d);
        p(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    }
    return p;
}

}  // namespace

TEST_CASE("symmetric subspace dimensions match the counting oracle") {
    CHECK(symmetric_dimension(0.5) == 4);
    CHECK(symmetric_dimension(1.0) == 10);
    CHECK(symmetric_dimension(1.5) == 20);
    CHECK(symmetric_dimension(2.0) == 35);
    for (int n = 1; n <= 4; ++n)
        CHECK(symmetric_dimension(n / 2.0) == count_multisets(n));

    CHECK(SymmetricBasis::build(0.5).dimension() == 4);
    CHECK(SymmetricBasis::build(1.0).dimension() == 10);
    CHECK(SymmetricBasis::build(1.5).dimension() == 20);
}

TEST_CASE("basis is orthonormal, symmetric, and the symmetrizer is a projector") {
    for (const double spin : {1.0, 1.5}) {
        const SymmetricBasis basis = SymmetricBasis::build(spin);
        const Eigen::MatrixXcd gram =
            basis.vectors().adjoint() * basis.vectors();
        CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-13);

        const Eigen::MatrixXcd p = basis.projector();
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(std::abs(p.trace().real() - static_cast<double>(basis.dimension())) <
              1e-10);

        // exchange invariance of every basis vector
        const int n = basis.index_count();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const Eigen::MatrixXcd ex = exchange_operator(a, b, n);
                CHECK((ex * basis.vectors() - basis.vectors()).cwiseAbs().maxCoeff() <
                      1e-13);
            }
    }
}

TEST_CASE("spin must be a positive half-integer and fit the memory budget") {
    CHECK_THROWS_AS(SymmetricBasis::build(0.3), ValidationError);
    CHECK_THROWS_AS(SymmetricBasis::build(0.0), ValidationError);
    CHECK_THROWS_WITH_AS(SymmetricBasis::build(1.0, 100), doctest::Contains("bytes"),
                         ValidationError);
}

TEST_CASE("total s operator spectrum") {
    const CliffordRep rep = build_representation();

    const SymmetricBasis half = SymmetricBasis::build(0.5);
    const SpinSpectrum s_half = total_s_operator(rep, half);
    CHECK(s_half.subspace_leakage < 1e-14);
    CHECK(s_half.eigenvalues.minCoeff() == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(s_half.eigenvalues.maxCoeff() == doctest::Approx(1.0).epsilon(1e-13));

    for (const double spin : {1.0, 1.5, 2.0}) {
        const SymmetricBasis basis = SymmetricBasis::build(spin);
        const SpinSpectrum spectrum = total_s_operator(rep, basis);
        CHECK(spectrum.subspace_leakage < 1e-13);

        std::set<long> values;
        for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
            const double v = spectrum.eigenvalues[i];
            const long rounded = std::lround(v);
            CHECK(std::abs(v - rounded) < 1e-10);
            values.insert(rounded);
        }
        std::set<long> expected;
        const long two_s = std::lround(2.0 * spin);
        for (long v = -two_s; v <= two_s; v += 2) expected.insert(v);
        CHECK(values == expected);
    }

    // all-plus product state is an eigenvector with eigenvalue +2S
    const SymmetricBasis basis = SymmetricBasis::build(1.0);
    const SpinSpectrum spectrum = total_s_operator(rep, basis);
    Eigen::VectorXcd all_plus = Eigen::VectorXcd::Zero(16);
    all_plus(0) = 1.0;  // e0 (x) e0, both in the s = +1 block
    const Eigen::VectorXcd coords = basis.vectors().adjoint() * all_plus;
    CHECK(std::abs((basis.vectors() * coords - all_plus).norm()) < 1e-13);
    CHECK((spectrum.sigma_restricted * coords - 2.0 * coords).norm() < 1e-12);
}

TEST_CASE("equation-of-motion operator commutes with Sigma") {
    const CliffordRep rep = build_representation();
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> u(-2.0, 2.0);

    const SymmetricBasis basis = SymmetricBasis::build(1.0);
    for (int draw = 0; draw < 10; ++draw) {
        const Covector3 k{u(rng), u(rng), u(rng)};
        const Covector3 s{u(rng), u(rng), u(rng)};
        const BwCommutationReport report =
            verify_bw_commutation(rep, basis, k, s, u(rng), u(rng));
        CHECK(report.commutator_residual < 1e-12);
    }

    // mu_m = 0, k = 0: trivial -2Sm multiple of the identity
    const BwCommutationReport trivial =
        verify_bw_commutation(rep, basis, {0, 0, 0}, {0, 0, 0}, 0.0, 1.3);
    CHECK(trivial.commutator_residual == 0.0);
}

TEST_CASE("single-slot s leaks outside the subspace except at maximal projection") {
    const CliffordRep rep = build_representation();
    const SymmetricBasis basis = SymmetricBasis::build(1.0);
    const BwCommutationReport report =
        verify_bw_commutation(rep, basis, {0.3, -0.2, 0.9}, {0.1, 0.5, -0.4},
                              0.7, 1.0);
    REQUIRE(report.eigen_leakage.size() == 3);
    for (const auto& [eigenvalue, leak] : report.eigen_leakage) {
        if (std::abs(eigenvalue) == 2.0)
            CHECK(leak < 1e-12);
        else
            CHECK(leak > 0.1);  // the S_m = 0 sector genuinely leaves the subspace
    }
}

TEST_CASE("arbitrary-spin phase formula") {
    // S = 1/2 reduces to the spin-1/2 result with s_hat = 2 S_m
    CHECK(bw_phase(0.5, 0.5, 0.25, 2.0, Coupling::AC) == -0.25 * 2.0);
    CHECK(bw_phase(0.5, -0.5, 0.25, 2.0, Coupling::AC) == 0.25 * 2.0);
    CHECK(bw_phase(0.5, 0.5, 0.25, 2.0, Coupling::HMW) == 0.25 * 2.0);

    CHECK(bw_phase(1.0, 0.0, 0.9, 5.0, Coupling::AC) == 0.0);
    CHECK(bw_phase(1.0, -1.0, 0.9, 1.0, Coupling::AC) == 0.9);
    CHECK(bw_phase(2.0, 1.0, 1.0, 1.0, Coupling::AC) == -0.5);

    CHECK_THROWS_AS(bw_phase(1.0, 0.5, 1.0, 1.0, Coupling::AC), ValidationError);
    CHECK_THROWS_AS(bw_phase(1.0, 2.0, 1.0, 1.0, Coupling::AC), ValidationError);
}

TEST_CASE("exponential of the transformation reproduces the phase") {
    const CliffordRep rep = build_representation();
    const double mu = 0.37, lambda = 1.9;
    for (const double spin : {0.5, 1.0, 1.5}) {
        const SymmetricBasis basis = SymmetricBasis::build(spin);
        const SpinSpectrum spectrum = total_s_operator(rep, basis);
        const double loop_integral = -lambda;  // closed loop, winding one

        const Eigen::MatrixXcd arg = std::complex<double>(0.0, -1.0) *
                                     (mu / (2.0 * spin)) * loop_integral *
                                     spectrum.sigma_restricted;
        const Eigen::MatrixXcd u = arg.exp();

        for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
            const double s_m = spectrum.eigenvalues[i] / 2.0;
            const std::complex<double> expected =
                std::exp(std::complex<double>(0.0, mu * (s_m / spin) * lambda));
            const Eigen::VectorXcd v = spectrum.eigenvectors.col(i);
            CHECK((u * v - expected * v).norm() < 1e-12);
        }
    }
}
