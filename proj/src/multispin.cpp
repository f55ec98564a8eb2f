#include "topophase/multispin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace topophase {

namespace {

int checked_index_count(double spin) {
    const double two_s = 2.0 * spin;
    const double rounded = std::round(two_s);
    if (std::abs(two_s - rounded) > 1e-9 || rounded < 1.0)
        throw ValidationError("spin must be a positive half-integer");
    return static_cast<int>(rounded);
}

std::size_t pow4(int n) {
    std::size_t d = 1;
    for (int i = 0; i < n; ++i) d *= 4;
    return d;
}

// Next multiset of digits 0..3 in nondecreasing order; false when exhausted.
bool next_multiset(std::vector<int>& digits) {
    const int n = static_cast<int>(digits.size());
    for (int i = n - 1; i >= 0; --i) {
        if (digits[i] < 3) {
            const int v = digits[i] + 1;
            for (int j = i; j < n; ++j) digits[j] = v;
            return true;
        }
    }
    return false;
}

std::size_t flat_index(const std::vector<int>& digits) {
    std::size_t idx = 0;
    for (int d : digits) idx = idx * 4 + static_cast<std::size_t>(d);
    return idx;
}

}  // namespace

std::size_t symmetric_dimension(double spin) {
    const std::size_t n = static_cast<std::size_t>(checked_index_count(spin));
    return (n + 1) * (n + 2) * (n + 3) / 6;  // C(n+3, 3)
}

SymmetricBasis SymmetricBasis::build(double spin, std::size_t memory_budget) {
    SymmetricBasis basis;
    basis.spin_ = spin;
    basis.n_indices_ = checked_index_count(spin);
    basis.full_dim_ = pow4(basis.n_indices_);
    const std::size_t dim = symmetric_dimension(spin);

    const std::size_t required = basis.full_dim_ * dim * sizeof(std::complex<double>);
    if (required > memory_budget)
        throw ValidationError("symmetric basis for spin " + std::to_string(spin) +
                              " needs " + std::to_string(required) +
                              " bytes, exceeding the budget of " +
                              std::to_string(memory_budget));

    basis.vectors_ = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(basis.full_dim_), static_cast<Eigen::Index>(dim));

    std::vector<int> digits(basis.n_indices_, 0);
    Eigen::Index col = 0;
    do {
        // All distinct permutations of the multiset share one coefficient.
        std::vector<int> perm = digits;
        std::sort(perm.begin(), perm.end());
        std::size_t count = 0;
        std::vector<std::size_t> indices;
        do {
            indices.push_back(flat_index(perm));
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        const double coeff = 1.0 / std::sqrt(static_cast<double>(count));
        for (std::size_t idx : indices)
            basis.vectors_(static_cast<Eigen::Index>(idx), col) = coeff;
        ++col;
    } while (next_multiset(digits));

    return basis;
}

double SymmetricBasis::leakage(const Eigen::VectorXcd& v) const {
    const Eigen::VectorXcd inside = vectors_ * (vectors_.adjoint() * v);
    return (v - inside).norm();
}

Eigen::MatrixXcd slot_operator(const Eigen::Matrix4cd& op, int slot,
                               int n_slots) {
    if (slot < 0 || slot >= n_slots)
        throw ValidationError("slot index out of range");
    const std::size_t dim = pow4(n_slots);
    // Stride of the chosen slot's digit in the row-major flat index.
    std::size_t stride = 1;
    for (int i = slot + 1; i < n_slots; ++i) stride *= 4;

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const int digit = static_cast<int>((col / stride) % 4);
        const std::size_t base = col - static_cast<std::size_t>(digit) * stride;
        for (int a = 0; a < 4; ++a) {
            const std::complex<double> v = op(a, digit);
            if (v != 0.0)
                m(static_cast<Eigen::Index>(base + static_cast<std::size_t>(a) * stride),
                  static_cast<Eigen::Index>(col)) += v;
        }
    }
    return m;
}

SpinSpectrum total_s_operator(const CliffordRep& rep, const SymmetricBasis& basis) {
    const int n = basis.index_count();
    const std::size_t dim = basis.full_dimension();
    Eigen::MatrixXcd sigma_full = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (int slot = 0; slot < n; ++slot)
        sigma_full += slot_operator(rep.s_op, slot, n);

    SpinSpectrum spectrum;
    const Eigen::MatrixXcd mapped = sigma_full * basis.vectors();
    spectrum.sigma_restricted = basis.vectors().adjoint() * mapped;
    const Eigen::MatrixXcd outside =
        mapped - basis.vectors() * spectrum.sigma_restricted;
    spectrum.subspace_leakage = outside.cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(spectrum.sigma_restricted);
    spectrum.eigenvalues = solver.eigenvalues();
    spectrum.eigenvectors = solver.eigenvectors();
    return spectrum;
}

BwCommutationReport verify_bw_commutation(const CliffordRep& rep,
                                          const SymmetricBasis& basis,
                                          const Covector3& k_upper,
                                          const Covector3& s_potential,
                                          double mu_m, double mass) {
    const int n = basis.index_count();
    const std::size_t dim = basis.full_dimension();

    // Per-slot operator gamma_mu k^mu - m I + mu_m S^mu s gamma_mu, with
    // k given upper-index and the potential as a covector.
    Eigen::Matrix4cd slot = -mass * Eigen::Matrix4cd::Identity();
    for (int mu = 0; mu < 3; ++mu) {
        slot += k_upper[mu] * rep.gamma_lower(mu);
        slot += mu_m * s_potential[mu] * rep.s_op * rep.gamma[mu];
    }

    Eigen::MatrixXcd d_full = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::MatrixXcd sigma_full = d_full;
    for (int s = 0; s < n; ++s) {
        d_full += slot_operator(slot, s, n);
        sigma_full += slot_operator(rep.s_op, s, n);
    }

    BwCommutationReport report;
    report.commutator_residual =
        (sigma_full * d_full - d_full * sigma_full).cwiseAbs().maxCoeff();

    // Leakage of a single-slot s on each Sigma eigenvector.
    const SpinSpectrum spectrum = total_s_operator(rep, basis);
    const Eigen::MatrixXcd s_first = slot_operator(rep.s_op, 0, n);
    std::map<long, double> leak_by_eigenvalue;
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
        const long rounded = std::lround(spectrum.eigenvalues[i]);
        const Eigen::VectorXcd full_vec =
            basis.vectors() * spectrum.eigenvectors.col(i);
        const double leak = basis.leakage(s_first * full_vec);
        auto [it, inserted] = leak_by_eigenvalue.try_emplace(rounded, leak);
        if (!inserted) it->second = std::max(it->second, leak);
    }
    for (const auto& [value, leak] : leak_by_eigenvalue)
        report.eigen_leakage.emplace_back(static_cast<double>(value), leak);
    return report;
}

double bw_phase(double spin, double spin_projection, double moment,
                double lambda, Coupling kind) {
    checked_index_count(spin);
    const double offset = spin_projection + spin;  // must be 0, 1, ..., 2S
    const double rounded = std::round(offset);
    if (std::abs(offset - rounded) > 1e-9 || rounded < 0.0 ||
        rounded > 2.0 * spin + 1e-9)
        throw ValidationError("spin projection must lie in {-S, -S+1, ..., S}");
    const double ratio = spin_projection / spin;
    return kind == Coupling::AC ? -moment * ratio * lambda
                                : moment * ratio * lambda;
}

}  // namespace topophase
