#include "topophase/scalar.hpp"

#include <cmath>

#include "topophase/quadrature.hpp"

namespace topophase {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

double chi_along_segment(const FieldConfig& config, Vec2 from, Vec2 to) {
    const Vec2 d = to - from;
    if (d.norm() == 0.0) return 0.0;
    const auto integrand = [&](double t) {
        const std::array<double, 3> s =
            effective_potential(config, Coupling::AC, from + t * d);
        return s[1] * d.x + s[2] * d.y;
    };
    return adaptive_integrate(integrand, 0.0, 1.0, 1e-12).value;
}

}  // namespace

PlaneWave PlaneWave::on_shell(double mass, double k1, double k2,
                              std::complex<double> amplitude) {
    PlaneWave wave;
    wave.omega = std::sqrt(mass * mass + k1 * k1 + k2 * k2);
    wave.k1 = k1;
    wave.k2 = k2;
    wave.amplitude = amplitude;
    return wave;
}

std::complex<double> PlaneWave::value(double t, double x, double y) const {
    return amplitude * std::exp(-I * (omega * t + k1 * x + k2 * y));
}

ScalarFieldGrid sample_plane_wave(int nt, int nx, int ny, double spacing,
                                  double t0, Vec2 origin, const PlaneWave& wave) {
    if (spacing <= 0.0) throw ValidationError("spacing must be positive");
    ScalarFieldGrid grid;
    grid.nt = nt;
    grid.nx = nx;
    grid.ny = ny;
    grid.spacing = spacing;
    grid.t0 = t0;
    grid.origin = origin;
    grid.values.resize(static_cast<std::size_t>(nt) * nx * ny);
    for (int it = 0; it < nt; ++it)
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy)
                grid.at(it, ix, iy) = wave.value(t0 + it * spacing,
                                                 origin.x + ix * spacing,
                                                 origin.y + iy * spacing);
    return grid;
}

ScalarCurrentGrid scalar_current(const ScalarFieldGrid& field, double spacing) {
    if (spacing <= 0.0) throw ValidationError("spacing must be positive");
    if (field.nt < 3 || field.nx < 3 || field.ny < 3)
        throw ValidationError("scalar current needs at least 3 points per axis");

    ScalarCurrentGrid out;
    out.nt = field.nt - 2;
    out.nx = field.nx - 2;
    out.ny = field.ny - 2;
    out.values.resize(static_cast<std::size_t>(out.nt) * out.nx * out.ny);

    const double inv2h = 1.0 / (2.0 * spacing);
    std::size_t n = 0;
    for (int it = 1; it < field.nt - 1; ++it)
        for (int ix = 1; ix < field.nx - 1; ++ix)
            for (int iy = 1; iy < field.ny - 1; ++iy) {
                const std::complex<double> phi = field.at(it, ix, iy);
                const std::complex<double> grad[3] = {
                    (field.at(it + 1, ix, iy) - field.at(it - 1, ix, iy)) * inv2h,
                    (field.at(it, ix + 1, iy) - field.at(it, ix - 1, iy)) * inv2h,
                    (field.at(it, ix, iy + 1) - field.at(it, ix, iy - 1)) * inv2h,
                };
                // i (phi* d phi - phi d phi*) = -2 Im(phi* d phi)
                for (int mu = 0; mu < 3; ++mu)
                    out.values[n][mu] = -2.0 * std::imag(std::conj(phi) * grad[mu]);
                ++n;
            }
    return out;
}

double scalar_gauge_residual(const FieldConfig& config, double g,
                             bool with_seagull, const PlaneWave& wave,
                             const Rect& region, double spacing,
                             Vec2 base_point) {
    if (spacing <= 0.0) throw ValidationError("spacing must be positive");
    if (region.x1 <= region.x0 || region.y1 <= region.y0)
        throw ValidationError("probe region is degenerate");
    if (!region.contains(base_point))
        throw ValidationError("base point must lie inside the probe region");

    const Rect guard{region.x0 - spacing, region.y0 - spacing,
                     region.x1 + spacing, region.y1 + spacing};
    for (const PointSource& s : config.electric())
        if (guard.contains(s.position))
            throw ValidationError("probe region touches a source");
    for (const PointSource& s : config.magnetic())
        if (guard.contains(s.position))
            throw ValidationError("probe region touches a source");

    const int nx = static_cast<int>(std::floor((region.x1 - region.x0) / spacing)) + 1;
    const int ny = static_cast<int>(std::floor((region.y1 - region.y0) / spacing)) + 1;
    if (nx < 3 || ny < 3)
        throw ValidationError("probe region is too small for the spacing");

    const double h = spacing;
    // m^2 carried by the dispersion of the test wave, so the free equation
    // is satisfied identically.
    const double m2 =
        wave.omega * wave.omega - wave.k1 * wave.k1 - wave.k2 * wave.k2;

    // Static ingredients per spatial point: potential covector and the
    // dressing phase from the straight reference path.
    std::vector<double> s1(static_cast<std::size_t>(nx) * ny);
    std::vector<double> s2(s1.size()), chi(s1.size());
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy) {
            const Vec2 p{region.x0 + ix * h, region.y0 + iy * h};
            const std::array<double, 3> s = effective_potential(config, Coupling::AC, p);
            const std::size_t idx = static_cast<std::size_t>(ix) * ny + iy;
            s1[idx] = s[1];
            s2[idx] = s[2];
            chi[idx] = chi_along_segment(config, base_point, p);
        }

    const auto phi = [&](int it, int ix, int iy) {
        const std::size_t idx = static_cast<std::size_t>(ix) * ny + iy;
        const double t = (it - 1) * h;
        return std::exp(-I * g * chi[idx]) *
               wave.value(t, region.x0 + ix * h, region.y0 + iy * h);
    };

    const double inv2h = 1.0 / (2.0 * h);
    const double invh2 = 1.0 / (h * h);
    double sum2 = 0.0;
    std::size_t count = 0;
    for (int ix = 1; ix < nx - 1; ++ix)
        for (int iy = 1; iy < ny - 1; ++iy) {
            const std::size_t idx = static_cast<std::size_t>(ix) * ny + iy;
            const std::complex<double> f = phi(1, ix, iy);
            const std::complex<double> box =
                (phi(2, ix, iy) - 2.0 * f + phi(0, ix, iy)) * invh2 -
                (phi(1, ix + 1, iy) - 2.0 * f + phi(1, ix - 1, iy)) * invh2 -
                (phi(1, ix, iy + 1) - 2.0 * f + phi(1, ix, iy - 1)) * invh2;
            const std::complex<double> dx_phi =
                (phi(1, ix + 1, iy) - phi(1, ix - 1, iy)) * inv2h;
            const std::complex<double> dy_phi =
                (phi(1, ix, iy + 1) - phi(1, ix, iy - 1)) * inv2h;

            // Upper-index spatial components: S^i = -S_i.
            const double su1 = -s1[idx];
            const double su2 = -s2[idx];
            const double div_s =
                (-s1[static_cast<std::size_t>(ix + 1) * ny + iy] +
                 s1[static_cast<std::size_t>(ix - 1) * ny + iy]) * inv2h +
                (-s2[static_cast<std::size_t>(ix) * ny + iy + 1] +
                 s2[static_cast<std::size_t>(ix) * ny + iy - 1]) * inv2h;
            const double s_dot_s = -(s1[idx] * s1[idx] + s2[idx] * s2[idx]);

            // Equation of motion of the dressed field phi = e^{-i g chi} phi_free:
            // (d_mu + i g S_mu)(d^mu + i g S^mu) phi + m^2 phi = 0, whose
            // quadratic piece is the seagull term.
            std::complex<double> r = box + m2 * f + I * g * div_s * f +
                                     2.0 * I * g * (su1 * dx_phi + su2 * dy_phi);
            if (with_seagull) r -= g * g * s_dot_s * f;
            sum2 += std::norm(r);
            ++count;
        }
    return std::sqrt(sum2 / static_cast<double>(count));
}

double scalar_gauge_residual(const FieldConfig& config, double g,
                             bool with_seagull, const PlaneWave& wave,
                             const Rect& region, double spacing) {
    return scalar_gauge_residual(config, g, with_seagull, wave, region, spacing,
                                 region.center());
}

}  // namespace topophase
