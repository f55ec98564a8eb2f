#include "topophase/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace topophase {

namespace {

struct SegmentKey {
    Vec2 lo, hi;
    bool operator<(const SegmentKey& o) const {
        if (lo.x != o.lo.x) return lo.x < o.lo.x;
        if (lo.y != o.lo.y) return lo.y < o.lo.y;
        if (hi.x != o.hi.x) return hi.x < o.hi.x;
        return hi.y < o.hi.y;
    }
};

bool lex_less(Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

// Integral of V . dr from a to b, evaluated with a fixed canonical
// orientation of the segment so that traversing b -> a yields the exact
// floating-point negative.
QuadratureResult segment_integral(const FieldConfig& config, Coupling kind,
                                  Vec2 a, Vec2 b, double tol) {
    const double sign = lex_less(b, a) ? -1.0 : 1.0;
    if (sign < 0.0) std::swap(a, b);
    const Vec2 d = b - a;
    const auto integrand = [&](double t) {
        const Vec2 p = a + t * d;
        const std::array<double, 3> v = effective_potential(config, kind, p);
        return v[1] * d.x + v[2] * d.y;
    };
    QuadratureResult q = adaptive_integrate(integrand, 0.0, 1.0, tol);
    q.value *= sign;
    return q;
}

void check_sources_off_path(const FieldConfig& config, const PlanarPath& path) {
    for (const PointSource& s : config.electric())
        if (distance_to_path(path, s.position) < kSourceGuard)
            throw GeometryError("a source lies on the path");
    for (const PointSource& s : config.magnetic())
        if (distance_to_path(path, s.position) < kSourceGuard)
            throw GeometryError("a source lies on the path");
}

PhaseResult make_phase(const FieldConfig& config, Coupling kind, double moment,
                       int s_hat, const PlanarPath& path, double tol,
                       double theta_weight, double analytic_weight) {
    if (s_hat != 1 && s_hat != -1)
        throw ValidationError("s_hat must be +1 or -1");
    if (!path.closed) throw ValidationError("phase requires a closed path");

    const Species species =
        kind == Coupling::AC ? Species::electric : Species::magnetic;
    PhaseResult result;
    const QuadratureResult q = line_integral(config, kind, path, tol);
    result.line_integral = q.value;
    result.quadrature_error = q.error_bound;
    result.converged = q.converged;
    result.theta = theta_weight * s_hat * moment * q.value;

    const std::vector<int> windings = source_windings(config, path, species);
    const std::vector<PointSource>& sources =
        species == Species::electric ? config.electric() : config.magnetic();
    double lambda = 0.0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        result.windings.emplace_back(static_cast<int>(i), windings[i]);
        lambda += sources[i].strength * windings[i];
    }
    result.enclosed = lambda;
    result.analytic_theta = analytic_weight * s_hat * moment * lambda;
    result.discrepancy = std::abs(result.theta - result.analytic_theta);
    return result;
}

}  // namespace

QuadratureResult line_integral(const FieldConfig& config, Coupling kind,
                               const PlanarPath& path, double tol) {
    validate_path(path);
    if (tol <= 0.0) throw ValidationError("tolerance must be positive");
    check_sources_off_path(config, path);

    const std::size_t n = path.segment_count();
    if (n == 0) return {};
    const double seg_tol = tol / static_cast<double>(n);

    std::vector<SegmentKey> keys(n);
    std::vector<QuadratureResult> parts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = path.segment_start(i);
        const Vec2 b = path.segment_end(i);
        keys[i] = lex_less(a, b) ? SegmentKey{a, b} : SegmentKey{b, a};
        parts[i] = segment_integral(config, kind, a, b, seg_tol);
    }

    // Deterministic reduction in canonical segment order: independent of the
    // traversal direction and of any parallel evaluation order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return keys[i] < keys[j]; });

    QuadratureResult total;
    for (std::size_t i : order) {
        total.value += parts[i].value;
        total.error_bound += parts[i].error_bound;
        total.converged = total.converged && parts[i].converged;
    }
    return total;
}

PhaseResult ac_phase(const FieldConfig& config, double mu_m, int s_hat,
                     const PlanarPath& path, double tol) {
    return make_phase(config, Coupling::AC, mu_m, s_hat, path, tol,
                      /*theta_weight=*/1.0, /*analytic_weight=*/-1.0);
}

PhaseResult hmw_phase(const FieldConfig& config, double mu_e, int s_hat,
                      const PlanarPath& path, double tol) {
    return make_phase(config, Coupling::HMW, mu_e, s_hat, path, tol,
                      /*theta_weight=*/-1.0, /*analytic_weight=*/1.0);
}

double path_independence(const FieldConfig& config, Coupling kind,
                         const PlanarPath& path_a, const PlanarPath& path_b,
                         double tol) {
    if (!path_a.closed || !path_b.closed)
        throw ValidationError("path independence requires closed paths");
    const Species species =
        kind == Coupling::AC ? Species::electric : Species::magnetic;
    if (source_windings(config, path_a, species) !=
        source_windings(config, path_b, species))
        throw GeometryError("paths have different winding vectors; "
                            "they are not homotopic in the source-free region");
    const double ia = line_integral(config, kind, path_a, tol).value;
    const double ib = line_integral(config, kind, path_b, tol).value;
    return std::abs(ia - ib);
}

}  // namespace topophase
