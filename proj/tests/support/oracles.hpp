#pragma once

// Brute-force reference computations, deliberately independent of the
// production grid/golden-section and shell machinery. Used to pin expected
// values; slow and simple on purpose.

#include <cmath>
#include <functional>
#include <vector>

#include "orlicz/nfunction.hpp"

namespace orlicz::oracle {

// dense log-grid sup of a ratio functional over t in [lo, hi]
inline double sup_ratio(const std::function<double(double)>& ratio, double lo = 1e-12,
                        double hi = 1e12, int n = 2000001) {
    double best = -kInf;
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) {
        double t = std::exp(llo + (lhi - llo) * double(i) / (n - 1));
        double r = ratio(t);
        if (std::isfinite(r) && r > best) best = r;
    }
    return best;
}

// composite Simpson on a fixed uniform grid
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; i += 2) sum += 4 * f(a + i * h);
    for (int i = 2; i < n; i += 2) sum += 2 * f(a + i * h);
    return sum * h / 3;
}

// composite midpoint: no endpoint evaluations, safe across right-continuous
// jumps sitting exactly on the panel seams
inline double midpoint(const std::function<double(double)>& f, double a, double b, int n = 40000) {
    const double h = (b - a) / n;
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

// dense evaluation of the 1-D Gagliardo modular on a single interval:
//   2 int_0^{L} u^{-1} [ int A(|f(x+u)-f(x)|/u^s) dx ] du
// with log-spaced u midpoints and trapezoid x sums.
inline double gagliardo_1d(const NFunction& nf, const std::function<double(double)>& f, double a,
                           double b, double s, double lip, int nu = 1200, int nx = 3000) {
    const double L = b - a;
    // truncation below u_min bounded by the Lipschitz estimate
    double u_min = L;
    {
        double target = 1e-12;
        while (u_min > 1e-300 && L / (1 - s) * nf(lip * std::pow(u_min, 1 - s)) > target)
            u_min /= 2;
    }
    double total = 0;
    const double llo = std::log(u_min), lhi = std::log(L);
    double prev_edge = u_min;
    for (int i = 0; i < nu; ++i) {
        double edge = std::exp(llo + (lhi - llo) * double(i + 1) / nu);
        double u = std::sqrt(prev_edge * edge);
        double du = edge - prev_edge;
        prev_edge = edge;
        double xlo = a, xhi = b - u;
        if (xhi <= xlo) continue;
        double inner = 0;
        for (int j = 0; j <= nx; ++j) {
            double x = xlo + (xhi - xlo) * double(j) / nx;
            double d = std::fabs(f(x + u) - f(x));
            double v = d > 0 ? nf(d / std::pow(u, s)) : 0.0;
            inner += (j == 0 || j == nx) ? v / 2 : v;
        }
        inner *= (xhi - xlo) / nx;
        total += 2.0 * inner / u * du;
    }
    return total;
}

} // namespace orlicz::oracle
