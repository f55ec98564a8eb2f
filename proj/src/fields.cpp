#include "topophase/fields.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace topophase {

namespace {

void check_sources(const std::vector<PointSource>& sources, const char* what) {
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const Vec2 p = sources[i].position;
        if (!std::isfinite(p.x) || !std::isfinite(p.y) ||
            !std::isfinite(sources[i].strength))
            throw ValidationError(std::string(what) + " source has non-finite data");
        for (std::size_t j = 0; j < i; ++j)
            if ((p - sources[j].position).norm() == 0.0)
                throw ValidationError(std::string(what) +
                                      " sources coincide at one point");
    }
}

// 2D Coulomb kernel: q * (p - r) / (2*pi*|p - r|^2).
Vec2 kernel_sum(const std::vector<PointSource>& sources, Vec2 p) {
    Vec2 field{};
    for (const PointSource& s : sources) {
        const Vec2 d = p - s.position;
        const double r2 = d.dot(d);
        if (r2 < kSourceGuard * kSourceGuard)
            throw SingularityError("field evaluation at a source point");
        const double c = s.strength / (2.0 * std::numbers::pi * r2);
        field.x += c * d.x;
        field.y += c * d.y;
    }
    return field;
}

}  // namespace

FieldConfig::FieldConfig(std::vector<PointSource> electric,
                         std::vector<PointSource> magnetic)
    : electric_(std::move(electric)), magnetic_(std::move(magnetic)) {
    check_sources(electric_, "electric");
    check_sources(magnetic_, "magnetic");
}

double FieldConfig::distance_to_sources(Vec2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const PointSource& s : electric_) d = std::min(d, (p - s.position).norm());
    for (const PointSource& s : magnetic_) d = std::min(d, (p - s.position).norm());
    return d;
}

FieldConfig FieldConfig::dual() const { return FieldConfig(magnetic_, electric_); }

FieldSample field_at(const FieldConfig& config, Vec2 p) {
    FieldSample sample;
    const Vec2 e = kernel_sum(config.electric(), p);
    const Vec2 b = kernel_sum(config.magnetic(), p);
    sample.E = {e.x, e.y, 0.0};
    sample.B = {b.x, b.y, 0.0};
    return sample;
}

std::array<double, 3> effective_potential(const FieldConfig& config,
                                          Coupling kind, Vec2 p) {
    // Identical code path for both couplings: only the field read differs.
    const Vec2 f = kind == Coupling::AC ? kernel_sum(config.electric(), p)
                                        : kernel_sum(config.magnetic(), p);
    return {0.0, f.y, -f.x};
}

std::vector<int> source_windings(const FieldConfig& config,
                                 const PlanarPath& path, Species species) {
    const std::vector<PointSource>& sources =
        species == Species::electric ? config.electric() : config.magnetic();
    std::vector<int> windings;
    windings.reserve(sources.size());
    for (const PointSource& s : sources) {
        if (distance_to_path(path, s.position) < kSourceGuard)
            throw GeometryError("a source lies on the path; geometry is ill-posed");
        windings.push_back(winding_number(path, s.position));
    }
    return windings;
}

double enclosed_charge(const FieldConfig& config, const PlanarPath& path,
                       Species species) {
    if (!path.closed)
        throw ValidationError("enclosed charge requires a closed path");
    const std::vector<PointSource>& sources =
        species == Species::electric ? config.electric() : config.magnetic();
    const std::vector<int> windings = source_windings(config, path, species);
    double lambda = 0.0;
    for (std::size_t i = 0; i < sources.size(); ++i)
        lambda += sources[i].strength * windings[i];
    return lambda;
}

GaussCheck check_gauss(const FieldConfig& config, Vec2 probe, double h) {
    if (h <= 0.0) throw ValidationError("step length must be positive");

    const auto Ex = [&](Vec2 p) { return field_at(config, p).E[0]; };
    const auto Ey = [&](Vec2 p) { return field_at(config, p).E[1]; };

    GaussCheck out;
    const double d1E1 = (Ex({probe.x + h, probe.y}) - Ex({probe.x - h, probe.y})) / (2.0 * h);
    const double d2E2 = (Ey({probe.x, probe.y + h}) - Ey({probe.x, probe.y - h})) / (2.0 * h);
    out.divergence = d1E1 + d2E2;

    // S = (0, E2, -E1): the curl form reuses the same samples, so the
    // agreement below is exact in floating point.
    const double d1S2 = (-Ex({probe.x + h, probe.y}) + Ex({probe.x - h, probe.y})) / (2.0 * h);
    const double d2S1 = (Ey({probe.x, probe.y + h}) - Ey({probe.x, probe.y - h})) / (2.0 * h);
    out.curl_form = d1S2 - d2S1;
    out.residual = std::abs(out.divergence);

    if (std::abs(out.curl_form + out.divergence) >
        1e-12 * (1.0 + std::abs(out.divergence)))
        throw std::logic_error("curl form and divergence disagree");
    return out;
}

}  // namespace topophase
