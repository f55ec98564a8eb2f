#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "topophase/clifford.hpp"
#include "topophase/fields.hpp"

namespace topophase {

/// Exact dimension of the totally symmetric subspace of 2S four-dimensional
/// Dirac indices: C(2S+3, 3).
std::size_t symmetric_dimension(double spin);

/// Orthonormal basis of the totally symmetric subspace of the 2S-fold tensor
/// product of Dirac index spaces. Columns of `vectors` live in the full
/// 4^(2S)-dimensional product space.
class SymmetricBasis {
  public:
    static constexpr std::size_t kDefaultMemoryBudget = 256ull << 20;  // bytes

    /// Throws ValidationError if 2S is not a positive integer or if the
    /// basis would exceed the memory budget (the message reports the
    /// required size).
    static SymmetricBasis build(double spin,
                                std::size_t memory_budget = kDefaultMemoryBudget);

    double spin() const { return spin_; }
    int index_count() const { return n_indices_; }          // 2S
    std::size_t full_dimension() const { return full_dim_; }  // 4^(2S)
    std::size_t dimension() const { return static_cast<std::size_t>(vectors_.cols()); }
    const Eigen::MatrixXcd& vectors() const { return vectors_; }

    /// Orthogonal projector onto the symmetric subspace, B B^dagger.
    Eigen::MatrixXcd projector() const { return vectors_ * vectors_.adjoint(); }

    /// Norm of the component of v outside the symmetric subspace.
    double leakage(const Eigen::VectorXcd& v) const;

  private:
    double spin_ = 0.0;
    int n_indices_ = 0;
    std::size_t full_dim_ = 0;
    Eigen::MatrixXcd vectors_;
};

/// A 4x4 operator acting on one Dirac index slot, as a matrix on the full
/// product space.
Eigen::MatrixXcd slot_operator(const Eigen::Matrix4cd& op, int slot,
                               int n_slots);

/// Sigma = sum over slots of the per-index s operator, restricted to the
/// symmetric subspace, with its eigendecomposition.
struct SpinSpectrum {
    Eigen::MatrixXcd sigma_restricted;  // dim x dim, Hermitian
    Eigen::VectorXd eigenvalues;        // ascending
    Eigen::MatrixXcd eigenvectors;      // columns, in basis coordinates
    double subspace_leakage = 0.0;      // norm of Sigma mapping outside the subspace
};
SpinSpectrum total_s_operator(const CliffordRep& rep, const SymmetricBasis& basis);

/// Residuals for the equation-of-motion operator
///   D = sum_n [ gamma_mu k^mu - m I + mu_m S^mu s gamma_mu ]^(n)
/// on the full product space: the commutator with Sigma, and the
/// out-of-subspace leakage of a single-slot s applied to each Sigma
/// eigenvector (zero only in the extreme eigenspaces).
struct BwCommutationReport {
    double commutator_residual = 0.0;  // max entry of [Sigma, D]
    std::vector<std::pair<double, double>> eigen_leakage;  // (eigenvalue, max leakage)
};
BwCommutationReport verify_bw_commutation(const CliffordRep& rep,
                                          const SymmetricBasis& basis,
                                          const Covector3& k_upper,
                                          const Covector3& s_potential,
                                          double mu_m, double mass);

/// Topological phase for spin S, projection S_m:
/// AC -> -mu (S_m/S) Lambda;  HMW -> +mu (S_m/S) Lambda.
/// S_m must lie in {-S, -S+1, ..., S}.
double bw_phase(double spin, double spin_projection, double moment,
                double lambda, Coupling kind);

}  // namespace topophase
