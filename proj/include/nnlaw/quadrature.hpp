#pragma once

#include <functional>

namespace nnlaw {

/// A numerical integral with its error estimate (absolute).
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

using RealFunction = std::function<double(double)>;

/// Integral over a finite interval [a, b]; tolerates integrable endpoint
/// singularities. `tol` is relative.
QuadResult integrate_finite(const RealFunction& f, double a, double b, double tol);

/// Integral over [a, +inf).
QuadResult integrate_half_line(const RealFunction& f, double a, double tol);

/// Adaptive Gauss-Kronrod on [a, b]; suited to integrands with interior kinks.
QuadResult integrate_kronrod(const RealFunction& f, double a, double b, double tol, unsigned max_depth = 15);

}  // namespace nnlaw
