#include "topophase/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace topophase {

void validate_path(const PlanarPath& path) {
    const std::size_t n = path.vertices.size();
    if (path.closed && n < 3)
        throw ValidationError("closed path needs at least 3 vertices");
    if (!path.closed && n < 2)
        throw ValidationError("open path needs at least 2 vertices");
    for (std::size_t i = 0; i < path.segment_count(); ++i) {
        const Vec2 d = path.segment_end(i) - path.segment_start(i);
        if (d.norm() == 0.0)
            throw ValidationError("consecutive path vertices must be distinct");
    }
}

double distance_to_segment(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

double distance_to_path(const PlanarPath& path, Vec2 p) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < path.segment_count(); ++i)
        d = std::min(d, distance_to_segment(path.segment_start(i),
                                            path.segment_end(i), p));
    return d;
}

int winding_number(const PlanarPath& path, Vec2 p) {
    validate_path(path);
    if (!path.closed)
        throw ValidationError("winding number requires a closed path");
    if (distance_to_path(path, p) < kSourceGuard)
        throw GeometryError("winding number is ill-posed for a point on the path");

    double angle = 0.0;
    for (std::size_t i = 0; i < path.segment_count(); ++i) {
        const Vec2 u = path.segment_start(i) - p;
        const Vec2 v = path.segment_end(i) - p;
        angle += std::atan2(u.cross(v), u.dot(v));
    }
    const double turns = angle / (2.0 * std::numbers::pi);
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) > 1e-6)
        throw GeometryError("winding angle sum is not an integer multiple of 2*pi; "
                            "geometry is ill-conditioned");
    return static_cast<int>(nearest);
}

PlanarPath reversed(const PlanarPath& path) {
    PlanarPath r = path;
    std::reverse(r.vertices.begin(), r.vertices.end());
    return r;
}

}  // namespace topophase
