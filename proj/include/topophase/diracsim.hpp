#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "topophase/fields.hpp"
#include "topophase/holonomy.hpp"
#include "topophase/scalar.hpp"

namespace topophase {

enum class BoundaryMode { periodic };

/// Uniform periodic grid over [-Lx/2, Lx/2) x [-Ly/2, Ly/2).
struct Grid2D {
    int nx = 0, ny = 0;
    double length_x = 0.0, length_y = 0.0;

    double hx() const { return length_x / nx; }
    double hy() const { return length_y / ny; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    Vec2 point(int ix, int iy) const {
        return {-0.5 * length_x + ix * hx(), -0.5 * length_y + iy * hy()};
    }
    bool contains(Vec2 p) const {
        return p.x >= -0.5 * length_x && p.x < 0.5 * length_x &&
               p.y >= -0.5 * length_y && p.y < 0.5 * length_y;
    }
};

/// Four-component spinor field on a grid. Component-major storage:
/// psi[(c * nx + ix) * ny + iy].
struct SpinorState {
    Grid2D grid;
    std::vector<std::complex<double>> psi;
    double time = 0.0;
    BoundaryMode boundary = BoundaryMode::periodic;

    std::complex<double>& at(int c, int ix, int iy) {
        return psi[(static_cast<std::size_t>(c) * grid.nx + ix) * grid.ny + iy];
    }
    std::complex<double> at(int c, int ix, int iy) const {
        return psi[(static_cast<std::size_t>(c) * grid.nx + ix) * grid.ny + iy];
    }

    double norm() const;                   // sum |psi|^2 hx hy
    Vec2 center_of_mass() const;           // density-weighted position
    double block_population(int s_hat) const;  // norm share of the s = +-1 block
    double norm_in_region(const Rect& region) const;
};

struct SimParams {
    double mass = 1.0;
    double mu_m = 0.0;
    int s_hat = +1;
    double dt = 0.01;
    BoundaryMode boundary = BoundaryMode::periodic;
    double source_guard_radius = 0.0;  // potential excision radius around sources
    int threads = 1;
};

/// Gaussian envelope times plane wave, projected mode by mode onto the
/// positive-energy subspace of the chosen s block; unit norm. The momentum
/// is snapped to the reciprocal lattice. Width below 3 grid spacings or
/// support reaching the boundary is rejected.
SpinorState init_wavepacket(const Grid2D& grid, Vec2 center, Vec2 momentum,
                            double width, double mass, int s_hat);

/// Norm-preserving split propagator for
///   h = gamma^0 (-i gamma^j d_j + m - s mu_m S_j gamma^j):
/// exact spectral kinetic exponential, pointwise potential factor from the
/// precomputed effective potential. Grid points within the guard radius of a
/// source are excluded from the potential; a source inside the grid without
/// a positive guard radius is rejected at construction.
class DiracPropagator {
  public:
    DiracPropagator(const Grid2D& grid, const SimParams& params,
                    const FieldConfig& config);
    ~DiracPropagator();
    DiracPropagator(const DiracPropagator&) = delete;
    DiracPropagator& operator=(const DiracPropagator&) = delete;

    const SimParams& params() const;
    const Grid2D& grid() const;

    /// n Strang steps with merged interior kinetic applications.
    void evolve(SpinorState& state, int n_steps) const;

    /// One Strang step of arbitrary duration (tables built on the fly).
    void step_custom(SpinorState& state, double tau) const;

    /// Exact free evolution exp(-i h_free T), single spectral application.
    void evolve_free_exact(SpinorState& state, double duration) const;

    /// Momentum translation by a reciprocal-lattice vector: psi *= e^{i dk.x}.
    void apply_momentum_kick(SpinorState& state, Vec2 delta_k) const;

    /// Nearest reciprocal-lattice vector.
    Vec2 snap_momentum(Vec2 k) const;

    /// Keep only the positive-energy component of every mode (readout aid;
    /// not part of the evolution).
    void project_positive_energy(SpinorState& state) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Single convenience step; builds a propagator per call.
SpinorState step(const SpinorState& state, const SimParams& params,
                 const FieldConfig& config);

/// Two-arm transport geometry: both arms run from start to end, one through
/// each waypoint list, at the given group speed.
struct TwoArmGeometry {
    Vec2 start{};
    Vec2 end{};
    std::vector<Vec2> via_a;
    std::vector<Vec2> via_b;
    double speed = 0.1;
};

struct EvolutionSnapshot {
    int arm = 0;  // 0 = arm A, 1 = arm B
    double time = 0.0;
    double norm = 0.0;
    Vec2 center_of_mass{};
    double opposite_block_norm = 0.0;
};

struct InterferenceResult {
    double extracted_phase = 0.0;  // overlap phase relative to the no-field run
    double raw_phase = 0.0;        // overlap phase of the interacting run
    double reference_phase = 0.0;  // overlap phase of the no-field run
    double contrast = 0.0;         // |overlap| of the interacting run
    double analytic_theta = 0.0;   // holonomy reference for the enclosing loop
    double discrepancy = 0.0;      // |extracted - analytic|
    double norm_drift = 0.0;       // max |norm - 1| over both runs
    double opposite_block_norm = 0.0;
    PhaseResult reference;         // full holonomy result for the loop
};

/// Transport interferometry: two coherent copies of one packet are carried
/// along the two arms by momentum kicks and interacting evolution, stopped
/// at the common endpoint, and compared. The protocol is run a second time
/// with no sources, and the extracted phase is the difference of the two
/// overlap arguments: the phase is defined relative to the configuration
/// without any field, which also cancels the protocol's kick systematics.
InterferenceResult interfere(const FieldConfig& config, const SimParams& params,
                             const Grid2D& grid, const TwoArmGeometry& geometry,
                             double packet_width, int snapshot_every = 0,
                             std::vector<EvolutionSnapshot>* series = nullptr);

struct GaugeEquivalenceResult {
    double fidelity = 0.0;     // |<psi_interacting | psi_dressed>|
    double leaked_norm = 0.0;  // final norm outside the region
    double norm_drift = 0.0;
    double duration = 0.0;     // realized duration (integer steps)
};

/// Evolves one packet with the interaction and compares against the freely
/// evolved state dressed with the accumulated potential phase along straight
/// reference paths from base_point. The packet must stay inside the simply
/// connected source-free region.
GaugeEquivalenceResult gauge_equivalence(const FieldConfig& config,
                                         const SimParams& params,
                                         const Grid2D& grid, const Rect& region,
                                         double duration, Vec2 packet_center,
                                         Vec2 packet_momentum,
                                         double packet_width, Vec2 base_point);

}  // namespace topophase
