#include <doctest.h>

#include <cmath>
#include <numbers>

#include "topophase/fields.hpp"

using namespace topophase;

namespace {

// Independent Gauss-law oracle: outward flux of E through a circle by dense
// trapezoidal sampling, no use of the quadrature module.
double flux_through_circle(const FieldConfig& config, Vec2 center, double radius,
                           int samples = 200000) {
    double flux = 0.0;
    const double dphi = 2.0 * std::numbers::pi / samples;
    for (int i = 0; i < samples; ++i) {
        const double phi = i * dphi;
        const Vec2 n{std::cos(phi), std::sin(phi)};
        const Vec2 p = center + radius * n;
        const FieldSample f = field_at(config, p);
        flux += (f.E[0] * n.x + f.E[1] * n.y) * radius * dphi;
    }
    return flux;
}

PlanarPath unit_square_ccw() {
    return PlanarPath{{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}, true};
}

}  // namespace

TEST_CASE("single unit charge: field value and Gauss flux") {
    const FieldConfig config({{{0, 0}, 1.0}}, {});
    const FieldSample f = field_at(config, {1, 0});
    CHECK(f.E[0] == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(f.E[1] == 0.0);
    CHECK(f.E[2] == 0.0);
    CHECK(f.B[0] == 0.0);

    CHECK(flux_through_circle(config, {0, 0}, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(flux_through_circle(config, {0, 0}, 3.5) == doctest::Approx(1.0).epsilon(1e-9));
    // circle not enclosing the charge
    CHECK(flux_through_circle(config, {5, 0}, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("empty config and symmetric cancellation") {
    const FieldConfig empty;
    const FieldSample f = field_at(empty, {0.3, -0.7});
    CHECK(f.E == std::array<double, 3>{0, 0, 0});
    CHECK(f.B == std::array<double, 3>{0, 0, 0});

    const FieldConfig pair({{{1, 0}, 2.0}, {{-1, 0}, 2.0}}, {});
    const FieldSample mid = field_at(pair, {0, 0});
    CHECK(mid.E[0] == 0.0);
    CHECK(mid.E[1] == 0.0);
}

TEST_CASE("superposition is exact") {
    const FieldConfig a({{{0.2, 0.4}, 1.3}}, {});
    const FieldConfig b({{{-1.0, 0.5}, -0.8}}, {});
    const FieldConfig both({{{0.2, 0.4}, 1.3}, {{-1.0, 0.5}, -0.8}}, {});
    const Vec2 p{0.9, -0.6};
    const FieldSample fa = field_at(a, p);
    const FieldSample fb = field_at(b, p);
    const FieldSample fab = field_at(both, p);
    CHECK(fab.E[0] == fa.E[0] + fb.E[0]);
    CHECK(fab.E[1] == fa.E[1] + fb.E[1]);
}

TEST_CASE("effective potential layouts and duality swap") {
    const FieldConfig config({{{0, 0}, 1.0}}, {});
    const std::array<double, 3> s = effective_potential(config, Coupling::AC, {1, 0});
    CHECK(s[0] == 0.0);
    CHECK(s[1] == 0.0);
    CHECK(s[2] == doctest::Approx(-1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));

    CHECK(effective_potential(config, Coupling::HMW, {1, 0}) ==
          std::array<double, 3>{0, 0, 0});

    // Relabeling charges as monopoles maps the AC pipeline onto the HMW one
    // bit for bit (identical code path).
    const FieldConfig dual = config.dual();
    for (const Vec2 p : {Vec2{1, 0}, Vec2{0.3, 2.0}, Vec2{-1.4, 0.2}}) {
        const std::array<double, 3> ac = effective_potential(config, Coupling::AC, p);
        const std::array<double, 3> hmw = effective_potential(dual, Coupling::HMW, p);
        CHECK(ac == hmw);
        const FieldSample fc = field_at(config, p);
        const FieldSample fd = field_at(dual, p);
        CHECK(fc.E[0] == fd.B[0]);
        CHECK(fc.E[1] == fd.B[1]);
    }

    const FieldConfig empty;
    CHECK(effective_potential(empty, Coupling::AC, {2, 2}) ==
          std::array<double, 3>{0, 0, 0});
}

TEST_CASE("evaluation at a source point is a singularity error") {
    const FieldConfig config({{{0.5, 0.5}, 1.0}}, {});
    CHECK_THROWS_AS(field_at(config, {0.5, 0.5}), SingularityError);
    CHECK_THROWS_AS(effective_potential(config, Coupling::AC, {0.5, 0.5 + 1e-13}),
                    SingularityError);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(FieldConfig({{{0, 0}, 1.0}, {{0, 0}, 2.0}}, {}), ValidationError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(FieldConfig({{{inf, 0}, 1.0}}, {}), ValidationError);
    // same point across species is fine
    CHECK_NOTHROW(FieldConfig({{{0, 0}, 1.0}}, {{{0, 0}, 2.0}}));
}

TEST_CASE("enclosed charge is winding-weighted") {
    const FieldConfig config({{{0, 0}, 1.0}}, {});
    CHECK(enclosed_charge(config, unit_square_ccw(), Species::electric) == 1.0);
    CHECK(enclosed_charge(config, unit_square_ccw(), Species::magnetic) == 0.0);

    PlanarPath away{{{3, 3}, {4, 3}, {4, 4}, {3, 4}}, true};
    CHECK(enclosed_charge(config, away, Species::electric) == 0.0);

    // double CCW loop: winding-number oracle gives 2
    PlanarPath doubled;
    doubled.closed = true;
    for (int lap = 0; lap < 2; ++lap)
        for (int i = 0; i < 8; ++i) {
            const double a = 2.0 * std::numbers::pi * i / 8.0;
            doubled.vertices.push_back({std::cos(a), std::sin(a)});
        }
    CHECK(winding_number(doubled, {0, 0}) == 2);
    CHECK(enclosed_charge(config, doubled, Species::electric) == 2.0);

    PlanarPath touching{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
    CHECK_THROWS_AS(enclosed_charge(config, touching, Species::electric),
                    GeometryError);
}

TEST_CASE("gauss check vanishes away from sources") {
    const FieldConfig config({{{0, 0}, 1.0}}, {});
    const GaussCheck g = check_gauss(config, {2, 0}, 1e-4);
    CHECK(g.residual < 1e-6);
    CHECK(g.curl_form == -g.divergence);

    const FieldConfig empty;
    CHECK(check_gauss(empty, {1, 1}, 1e-4).residual == 0.0);

    const FieldConfig two({{{0, 0}, 1.0}, {{1, 0}, -2.5}}, {});
    CHECK(check_gauss(two, {4, 3}, 1e-4).residual < 1e-6);
}
