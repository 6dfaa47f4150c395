#pragma once

#include <functional>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

/// Outcome of an adaptive quadrature. `converged` implies
/// abs_error_estimate <= tol_abs + tol_rel * |value|. A divergent integral is
/// reported as value = +inf with converged = false and diverged = true.
struct QuadResult {
    double value = 0;
    double abs_error_estimate = 0;
    long panels = 0;
    bool converged = false;
    bool diverged = false;
};

struct QuadOptions {
    double tol_rel = 1e-6;
    double tol_abs = 1e-300;
    long max_panels = 400000;
    std::vector<double> breakpoints; // interior nodes the integrand is not smooth across
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Globally adaptive Gauss-Kronrod 7-15 on [a, b].
QuadResult integrate(const Fn1& f, double a, double b, const QuadOptions& opt = {});

// Adaptive tensor Gauss-Legendre on the rectangle [ax,bx] x [ay,by].
QuadResult integrate2d(const Fn2& f, double ax, double bx, double ay, double by,
                       const QuadOptions& opt = {});

// Single non-adaptive GK15 pass (value, error) -- building block for graded schemes.
void gk15(const Fn1& f, double a, double b, double& value, double& error);

} // namespace orlicz
