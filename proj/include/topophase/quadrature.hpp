#pragma once

#include <functional>

namespace topophase {

/// Outcome of an adaptive quadrature. When the subdivision budget runs out
/// before the tolerance is met, `converged` is false and `error_bound` is the
/// achieved estimate.
struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = true;
};

/// Adaptive Gauss-Legendre integration of f over [a, b] with interval
/// halving: an interval is accepted when the 15-point rule and the sum of the
/// two half-interval rules agree within the local tolerance.
QuadratureResult adaptive_integrate(const std::function<double(double)>& f,
                                    double a, double b, double tol,
                                    int max_depth = 28);

}  // namespace topophase
