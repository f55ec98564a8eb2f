#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "topophase/common.hpp"

namespace topophase {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double a, const Vec2& v) { return {a * v.x, a * v.y}; }

/// Polyline trajectory in the plane. A closed path has >= 3 vertices and an
/// implicit return segment from the last vertex back to the first.
struct PlanarPath {
    std::vector<Vec2> vertices;
    bool closed = true;

    std::size_t segment_count() const {
        if (vertices.size() < 2) return 0;
        return closed ? vertices.size() : vertices.size() - 1;
    }
    Vec2 segment_start(std::size_t i) const { return vertices[i]; }
    Vec2 segment_end(std::size_t i) const {
        return vertices[(i + 1) % vertices.size()];
    }
};

/// Throws ValidationError unless the path satisfies its invariants
/// (vertex count, consecutive vertices distinct).
void validate_path(const PlanarPath& path);

/// Distance from p to the nearest point of the segment [a, b].
double distance_to_segment(Vec2 a, Vec2 b, Vec2 p);

/// Distance from p to the nearest point of any path segment.
double distance_to_path(const PlanarPath& path, Vec2 p);

/// Signed number of times a closed path winds around p, from the summed
/// subtended angles. Throws GeometryError if p lies on a segment or if the
/// angle sum is farther than 1e-6 * 2*pi from an integer.
int winding_number(const PlanarPath& path, Vec2 p);

/// Path with the traversal direction reversed.
PlanarPath reversed(const PlanarPath& path);

}  // namespace topophase
