#pragma once

#include <complex>
#include <vector>

#include "topophase/fields.hpp"

namespace topophase {

/// Axis-aligned rectangle, used as a simply connected probe region.
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    bool contains(Vec2 p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
};

/// phi(t,x,y) = A exp(-i (omega t + k1 x + k2 y)).
struct PlaneWave {
    double omega = 1.0;
    double k1 = 0.0;
    double k2 = 0.0;
    std::complex<double> amplitude{1.0, 0.0};

    /// On-shell wave: omega = sqrt(m^2 + k^2).
    static PlaneWave on_shell(double mass, double k1, double k2,
                              std::complex<double> amplitude = {1.0, 0.0});

    std::complex<double> value(double t, double x, double y) const;
};

/// Complex field sampled on a uniform (t, x, y) grid with one spacing for
/// all axes. Index layout: (it * nx + ix) * ny + iy.
struct ScalarFieldGrid {
    int nt = 0, nx = 0, ny = 0;
    double spacing = 0.0;
    double t0 = 0.0;
    Vec2 origin{};
    std::vector<std::complex<double>> values;

    std::complex<double>& at(int it, int ix, int iy) {
        return values[(static_cast<std::size_t>(it) * nx + ix) * ny + iy];
    }
    std::complex<double> at(int it, int ix, int iy) const {
        return values[(static_cast<std::size_t>(it) * nx + ix) * ny + iy];
    }
};

ScalarFieldGrid sample_plane_wave(int nt, int nx, int ny, double spacing,
                                  double t0, Vec2 origin, const PlaneWave& wave);

/// Conserved current j_mu = i (phi* d_mu phi - phi d_mu phi*) by central
/// differences, at interior grid points. Grids need at least 3 points per
/// axis. Layout matches the interior block of the input grid.
struct ScalarCurrentGrid {
    int nt = 0, nx = 0, ny = 0;  // interior extents
    std::vector<std::array<double, 3>> values;

    const std::array<double, 3>& at(int it, int ix, int iy) const {
        return values[(static_cast<std::size_t>(it) * nx + ix) * ny + iy];
    }
};
ScalarCurrentGrid scalar_current(const ScalarFieldGrid& field, double spacing);

/// RMS residual of the interacting scalar equation of motion applied to the
/// gauge-dressed plane wave phi = exp(-i g chi) phi_free, where chi is the
/// line integral of the effective potential from base_point along straight
/// reference paths. With the quadratic g^2 S.S term included the residual is
/// pure discretization error, O(h^2); without it the residual approaches a
/// g^2-dependent limit.
double scalar_gauge_residual(const FieldConfig& config, double g,
                             bool with_seagull, const PlaneWave& wave,
                             const Rect& region, double spacing,
                             Vec2 base_point);

/// Overload placing the reference base point at the region center.
double scalar_gauge_residual(const FieldConfig& config, double g,
                             bool with_seagull, const PlaneWave& wave,
                             const Rect& region, double spacing);

}  // namespace topophase
