#pragma once

#include <utility>
#include <vector>

#include "topophase/fields.hpp"
#include "topophase/quadrature.hpp"

namespace topophase {

/// Computed line-integral phase with its analytic cross-check.
struct PhaseResult {
    double theta = 0.0;          // spin-weight * moment * line integral
    double line_integral = 0.0;  // closed-loop integral of the potential
    double enclosed = 0.0;       // winding-weighted Lambda of the species
    std::vector<std::pair<int, int>> windings;  // (source index, winding)
    double analytic_theta = 0.0;
    double discrepancy = 0.0;  // |theta - analytic_theta|
    double quadrature_error = 0.0;
    bool converged = true;
};

/// Integral of the effective potential along the path, by per-segment
/// adaptive quadrature with the total tolerance split evenly over segments.
/// Segment contributions are evaluated in canonical segment orientation and
/// summed in canonical order, so reversing the path negates the result
/// exactly. For a closed path the value equals minus the winding-weighted
/// enclosed strength of the matching species.
QuadratureResult line_integral(const FieldConfig& config, Coupling kind,
                               const PlanarPath& path, double tol);

/// theta = s_hat * mu_m * closed-loop integral of S;
/// analytic reference: -s_hat * mu_m * Lambda_e.
PhaseResult ac_phase(const FieldConfig& config, double mu_m, int s_hat,
                     const PlanarPath& path, double tol);

/// theta = -s_hat * mu_e * closed-loop integral of T;
/// analytic reference: +s_hat * mu_e * Lambda_m.
PhaseResult hmw_phase(const FieldConfig& config, double mu_e, int s_hat,
                      const PlanarPath& path, double tol);

/// |integral(pathA) - integral(pathB)| for two homotopic closed paths.
/// Throws GeometryError when the paths' winding vectors differ (the inputs
/// are not homotopic in the source-free region, so the comparison is
/// meaningless rather than failed).
double path_independence(const FieldConfig& config, Coupling kind,
                         const PlanarPath& path_a, const PlanarPath& path_b,
                         double tol);

}  // namespace topophase
