#pragma once

#include <array>
#include <vector>

#include "topophase/geometry.hpp"

namespace topophase {

/// Which effective-potential pipeline a computation runs:
/// AC reads the electric field, HMW the magnetic one.
enum class Coupling { AC, HMW };

enum class Species { electric, magnetic };

/// A point where a straight source line pierces the plane, with its signed
/// linear density.
struct PointSource {
    Vec2 position;
    double strength = 0.0;
};

/// Planar configuration of electric line charges and magnetic monopole line
/// densities. Immutable once built; all evaluation is pure.
class FieldConfig {
  public:
    FieldConfig() = default;
    FieldConfig(std::vector<PointSource> electric,
                std::vector<PointSource> magnetic);

    const std::vector<PointSource>& electric() const { return electric_; }
    const std::vector<PointSource>& magnetic() const { return magnetic_; }
    bool empty() const { return electric_.empty() && magnetic_.empty(); }

    /// Distance from p to the nearest source of either species.
    double distance_to_sources(Vec2 p) const;

    /// Config with every electric charge relabeled as a monopole of equal
    /// strength and vice versa.
    FieldConfig dual() const;

  private:
    std::vector<PointSource> electric_;
    std::vector<PointSource> magnetic_;
};

/// Field values at one point. Components follow the tensor layout used by
/// the algebra module: in-plane (E1,E2)/(B1,B2), normal E3/B3.
struct FieldSample {
    std::array<double, 3> E{};
    std::array<double, 3> B{};
};

/// Superposed fields at p. Each source contributes
/// q * (p - r) / (2*pi*|p - r|^2), the normalization under which the flux of
/// E through any loop equals the enclosed strength. Throws SingularityError
/// within kSourceGuard of a source.
FieldSample field_at(const FieldConfig& config, Vec2 p);

/// Effective potential covector: AC -> (0, E2, -E1); HMW -> (0, B2, -B1).
std::array<double, 3> effective_potential(const FieldConfig& config,
                                          Coupling kind, Vec2 p);

/// Winding-weighted enclosed strength of one species for a closed path.
/// Throws GeometryError if a source lies on a segment.
double enclosed_charge(const FieldConfig& config, const PlanarPath& path,
                       Species species);

/// Per-source winding numbers, in source order of the given species.
std::vector<int> source_windings(const FieldConfig& config,
                                 const PlanarPath& path, Species species);

/// Central-difference check of the source-free field equations at a probe
/// point: div E and the curl form d1 S2 - d2 S1, which must be exact
/// negatives of each other.
struct GaussCheck {
    double divergence = 0.0;  // d1 E1 + d2 E2
    double curl_form = 0.0;   // d1 S2 - d2 S1
    double residual = 0.0;    // |divergence|
};
GaussCheck check_gauss(const FieldConfig& config, Vec2 probe, double h);

}  // namespace topophase
