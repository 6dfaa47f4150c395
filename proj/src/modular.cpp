#include "orlicz/modular.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

constexpr double kPi = 3.14159265358979323846;

Domain as_interval_domain(const Domain& D) {
    // 1-D balls are intervals; keeps the catalog uniform for the 1-D engines
    if (D.shape() == Domain::Shape::ball && D.dim() == 1)
        return Domain::interval(D.center()[0] - D.radius(), D.center()[0] + D.radius());
    return D;
}

std::vector<double> breaks_in(const Profile1D& f, double lo, double hi, double shift = 0.0) {
    std::vector<double> out;
    for (double b : f.breakpoints) {
        double t = b - shift;
        if (t > lo && t < hi) out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1-D seminorm: self term on one interval
//
//   I = 2 Int_0^L (1/u) F(u) du,   F(u) = Int A(|f(x+u)-f(x)|/u^s) dx
//
// integrated over dyadic u-shells with an analytic Lipschitz tail bound.
// ---------------------------------------------------------------------------

struct ShellTracker {
    std::vector<double> sums;
    // divergence = shell sums that stop decaying while still significant
    // against the error budget (guards against flagging quadrature noise)
    bool diverging(double significance) const {
        std::size_t n = sums.size();
        if (n < 16) return false;
        return sums[n - 1] > significance && sums[n - 1] >= sums[n - 9];
    }
    // all of the last `m` shells below the noise floor and no upward trend
    bool negligible_tail(double noise, int m = 6) const {
        std::size_t n = sums.size();
        if (int(n) < 2 * m) return false;
        double recent = 0, before = 0;
        for (int i = 0; i < m; ++i) {
            recent = std::max(recent, sums[n - 1 - i]);
            before = std::max(before, sums[n - 1 - m - i]);
        }
        return recent <= noise && recent <= before;
    }
    double recent_max(int m = 6) const {
        double r = 0;
        std::size_t n = sums.size();
        for (int i = 0; i < m && i < int(n); ++i) r = std::max(r, sums[n - 1 - i]);
        return r;
    }
};

// scale_hint > 0 seeds the absolute error floors; pass 0 to trigger the
// internal pilot pass that estimates the scale first.
QuadResult wsa_self_run(const NFunction& nf, double a, double b, double s, const Profile1D& f,
                        const ModularOptions& opt, bool negative_side, double scale_hint,
                        long max_inner_panels) {
    QuadResult out;
    const double L = b - a;
    if (!(L > 0) || f.sup_abs == 0) {
        out.converged = true;
        return out;
    }
    const double factor = opt.full_sum_debug ? 1.0 : 2.0;
    // below this step, raw differences cancel in double precision; evaluate
    // the increment through a scaled difference at step u_floor instead
    const double u_floor = 1e-8 * L;

    // inner_abs: absolute error budget for one F(u) evaluation
    auto F = [&](double u, double inner_abs) -> double {
        double step = u, amp = 1.0;
        if (u < u_floor) {
            step = u_floor;
            amp = u / u_floor;
        }
        double xlo = std::max(a, f.lo - step), xhi = std::min(b - step, f.hi);
        if (negative_side) {
            xlo = std::max(a + step, f.lo);
            xhi = std::min(b, f.hi + step);
        }
        if (xlo >= xhi) return 0.0;
        QuadOptions q;
        q.tol_rel = opt.tol_rel / 4;
        q.tol_abs = inner_abs;
        q.max_panels = max_inner_panels;
        double sh = negative_side ? -step : step;
        if (!opt.light) {
            q.breakpoints = breaks_in(f, xlo, xhi);
            for (double bp : breaks_in(f, xlo, xhi, sh)) q.breakpoints.push_back(bp);
        }
        const double us = std::pow(u, s);
        auto integrand = [&](double x) {
            double d = amp * std::fabs(f.eval(x + sh) - f.eval(x));
            return d > 0 ? nf(d / us) : 0.0;
        };
        QuadResult r = integrate(integrand, xlo, xhi, q);
        out.panels += r.panels;
        return r.value;
    };

    KahanSum total, err;
    ShellTracker shells;
    double u_hi = L;
    bool done = false;
    for (int k = 0; k < opt.max_shells && !done; ++k) {
        double u_lo = u_hi / 2;
        // absolute budget for this shell, tied to the established scale and
        // divided so that the whole shell sum stays inside the tolerance
        double scale = std::max(scale_hint, std::fabs(total.value()));
        double shell_abs = std::max(opt.tol_abs / 16, opt.tol_rel * scale / 256);
        double inner_abs = shell_abs * u_lo / (2.0 * factor * (u_hi - u_lo));
        QuadOptions q;
        q.tol_rel = opt.tol_rel / 8;
        q.tol_abs = shell_abs;
        q.max_panels = 400;
        QuadResult sh =
            integrate([&](double u) { return factor * F(u, inner_abs) / u; }, u_lo, u_hi, q);
        out.panels += sh.panels;
        if (sh.diverged) {
            out.value = kInf;
            out.diverged = true;
            return out;
        }
        total.add(sh.value);
        // the u-rule error plus the bias the inner x-tolerances may carry
        err.add(sh.abs_error_estimate);
        err.add(opt.tol_rel / 8 * std::fabs(sh.value) + shell_abs);
        shells.sums.push_back(sh.value);
        double budget = opt.tol_abs + opt.tol_rel * std::fabs(total.value());
        if (shells.diverging(budget / 8)) {
            out.value = kInf;
            out.diverged = true;
            return out;
        }
        // Lipschitz tail: 2 Int_0^{u_lo} F/u du <= (2 len / (1-s)) A(lip u_lo^{1-s})
        double len = std::min(L, f.hi - f.lo + u_lo);
        double tail = f.lip > 0
                          ? factor * len / (1.0 - s) * nf(f.lip * std::pow(u_lo, 1.0 - s))
                          : 0.0;
        if (tail <= budget / 8 || tail == 0.0) {
            err.add(tail);
            done = true;
        } else if (shells.negligible_tail(budget / 64)) {
            // the global Lipschitz bound can be far off for locally flat
            // profiles; once shells sit at the noise floor and keep
            // shrinking, account a generous geometric tail and stop
            err.add(16 * shells.recent_max());
            done = true;
        }
        u_hi = u_lo;
    }
    out.value = total.value();
    out.abs_error_estimate = err.value();
    out.converged =
        done && out.abs_error_estimate <= opt.tol_abs + opt.tol_rel * std::fabs(out.value);
    return out;
}

QuadResult wsa_self(const NFunction& nf, double a, double b, double s, const Profile1D& f,
                    const ModularOptions& opt, bool negative_side) {
    if (opt.scale_hint > 0)
        return wsa_self_run(nf, a, b, s, f, opt, negative_side, opt.scale_hint, 1600);
    // pilot pass pins the magnitude so the real pass can run with sane
    // absolute floors from the first shell
    ModularOptions pilot = opt;
    pilot.tol_rel = 0.02;
    pilot.light = true;
    QuadResult rough = wsa_self_run(nf, a, b, s, f, pilot, negative_side, 0.0, 64);
    if (rough.diverged) {
        // confirm divergence at the real settings before reporting it
        return wsa_self_run(nf, a, b, s, f, opt, negative_side, 0.0, 1600);
    }
    return wsa_self_run(nf, a, b, s, f, opt, negative_side, std::fabs(rough.value), 1600);
}

// cross term between two disjoint intervals carrying profiles fi, fj (x in
// (a1,b1), y in (a2,b2), b1 <= a2); returned without the ordered-pair factor.
QuadResult wsa_cross(const NFunction& nf, double a1, double b1, const Profile1D& fi, double a2,
                     double b2, const Profile1D& fj, double s, const ModularOptions& opt,
                     double scale_hint) {
    QuadResult out;
    if (fi.sup_abs == 0 && fj.sup_abs == 0) {
        out.converged = true;
        return out;
    }
    const double inner_abs =
        std::max(opt.tol_abs, opt.tol_rel * scale_hint) / (8.0 * std::max(1.0, b1 - a1));
    auto inner = [&](double x) {
        double fx = fi.eval(x);
        QuadOptions q;
        q.tol_rel = opt.tol_rel / 4;
        q.tol_abs = inner_abs;
        q.max_panels = 2000;
        q.breakpoints = breaks_in(fj, a2, b2);
        // geometric seeds toward a possibly touching corner
        for (int m = 1; m <= 48; ++m) {
            double y = a2 + (b2 - a2) * std::ldexp(1.0, -m);
            if (y > a2 && y < b2) q.breakpoints.push_back(y);
        }
        auto integrand = [&](double y) {
            double d = std::fabs(fj.eval(y) - fx);
            double r = y - x;
            return d > 0 ? nf(d / std::pow(r, s)) / r : 0.0;
        };
        QuadResult r = integrate(integrand, a2, b2, q);
        out.panels += r.panels;
        if (r.diverged) return kInf;
        return r.value;
    };
    QuadOptions qo;
    qo.tol_rel = opt.tol_rel / 2;
    qo.tol_abs = std::max(opt.tol_abs, opt.tol_rel * scale_hint) / 8.0;
    qo.max_panels = 2000;
    qo.breakpoints = breaks_in(fi, a1, b1);
    QuadResult r = integrate(inner, a1, b1, qo);
    out.panels += r.panels;
    out.value = r.value;
    out.abs_error_estimate = r.abs_error_estimate;
    out.converged = r.converged;
    out.diverged = r.diverged;
    if (r.diverged) out.value = kInf;
    return out;
}

// Int over one complement component of A(|f(x)|/r^s)/r dy for fixed x, as a
// function of the distance range [r0, r1] (r1 may be +inf; the far tail is
// truncated with the analytic bound (1/s) A(c R^{-s}) added to the error).
struct RayIntegral {
    double value = 0, error = 0;
    bool diverged = false;
};

RayIntegral complement_ray(const NFunction& nf, double c, double s, double r0, double r1,
                           const ModularOptions& opt) {
    RayIntegral out;
    if (c <= 0) return out;
    if (!(r0 > 0)) {
        out.diverged = true;
        return out;
    }
    KahanSum total;
    double lo = r0;
    for (int m = 0; m < 4000; ++m) {
        double hi = std::min(r1, lo * 2);
        if (hi <= lo) break;
        double v, e;
        gk15([&](double r) { return nf(c / std::pow(r, s)) / r; }, lo, hi, v, e);
        total.add(v);
        out.error += e;
        lo = hi;
        if (lo >= r1) break;
        // integrand decreasing in r; stop when the analytic tail is negligible
        double tail = (1.0 / s) * nf(c * std::pow(lo, -s));
        if (tail <= opt.tol_abs / 8 + opt.tol_rel * total.value() / 8) {
            out.error += tail;
            break;
        }
    }
    out.value = total.value();
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// 1-D engine over an interval union
// ---------------------------------------------------------------------------

QuadResult wsa_1d(const NFunction& nf, const IntervalUnion& U, double s, const TestFunction& f,
                  Region region, const ModularOptions& opt) {
    QuadResult out;
    std::vector<double> vals, errs;
    bool all_converged = true;
    const auto& parts = U.parts();

    std::vector<Profile1D> profiles;
    profiles.reserve(parts.size());
    for (const auto& p : parts) {
        if (!p.bounded()) fail(errc::schema, "wsa_1d: unbounded interval");
        profiles.push_back(f.profile_on(p.lo, p.hi));
    }

    ModularOptions self_opt = opt;
    if (parts.size() > 1) self_opt.scale_hint = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        QuadResult self = wsa_self(nf, parts[i].lo, parts[i].hi, s, profiles[i], self_opt, false);
        out.panels += self.panels;
        if (self.diverged) return self;
        if (opt.full_sum_debug) {
            QuadResult neg = wsa_self(nf, parts[i].lo, parts[i].hi, s, profiles[i], self_opt, true);
            out.panels += neg.panels;
            if (neg.diverged) return neg;
            self.value += neg.value;
            self.abs_error_estimate += neg.abs_error_estimate;
            self.converged = self.converged && neg.converged;
        }
        vals.push_back(self.value);
        errs.push_back(self.abs_error_estimate);
        all_converged = all_converged && self.converged;
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            QuadResult cr = wsa_cross(nf, parts[i].lo, parts[i].hi, profiles[i], parts[j].lo,
                                      parts[j].hi, profiles[j], s, opt, pairwise_sum(vals));
            out.panels += cr.panels;
            if (cr.diverged) return cr;
            // cross pairs always carry the symmetry factor 2; the full-sum
            // debug mode exercises the mirrored self terms only
            vals.push_back(2.0 * cr.value);
            errs.push_back(2.0 * cr.abs_error_estimate);
            all_converged = all_converged && cr.converged;
        }

    if (region == Region::full_space) {
        // components of the complement of U
        struct Comp {
            double lo, hi;
        };
        std::vector<Comp> comps;
        comps.push_back({-kInf, parts.front().lo});
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
            comps.push_back({parts[i].hi, parts[i + 1].lo});
        comps.push_back({parts.back().hi, kInf});

        for (std::size_t i = 0; i < parts.size(); ++i) {
            const Profile1D& fi = profiles[i];
            if (fi.sup_abs == 0) continue;
            auto tail_at = [&](double x) -> double {
                double c = std::fabs(fi.eval(x));
                if (c == 0) return 0.0;
                double acc = 0;
                for (const auto& cmp : comps) {
                    double r0, r1;
                    if (cmp.hi <= x) {
                        r0 = x - cmp.hi;
                        r1 = finite(cmp.lo) ? x - cmp.lo : kInf;
                    } else {
                        r0 = cmp.lo - x;
                        r1 = finite(cmp.hi) ? cmp.hi - x : kInf;
                    }
                    if (r0 <= 0) r0 = std::max(r0, 1e-300);
                    RayIntegral ri = complement_ray(nf, c, s, r0, r1, opt);
                    if (ri.diverged) return kInf;
                    acc += ri.value;
                    // error folded into the outer estimate via the integrand itself
                }
                return acc;
            };
            QuadOptions q;
            q.tol_rel = opt.tol_rel / 2;
            q.tol_abs = std::max(opt.tol_abs, opt.tol_rel * pairwise_sum(vals)) / 8.0;
            q.max_panels = 4000;
            q.breakpoints = breaks_in(fi, parts[i].lo, parts[i].hi);
            QuadResult rr = integrate(tail_at, std::max(parts[i].lo, fi.lo),
                                      std::min(parts[i].hi, fi.hi), q);
            out.panels += rr.panels;
            if (rr.diverged) {
                out.value = kInf;
                out.diverged = true;
                return out;
            }
            // x in D, y in D^c and the mirrored order contribute equally
            vals.push_back(2.0 * rr.value);
            errs.push_back(2.0 * rr.abs_error_estimate);
            all_converged = all_converged && rr.converged;
        }
    }

    out.value = pairwise_sum(vals);
    out.abs_error_estimate = pairwise_sum(errs);
    out.converged = all_converged &&
                    out.abs_error_estimate <= opt.tol_abs + opt.tol_rel * std::fabs(out.value);
    return out;
}

// ---------------------------------------------------------------------------
// modular_la
// ---------------------------------------------------------------------------

QuadResult modular_la(const NFunction& nf, const Domain& D0, const TestFunction& f,
                      ModularOptions opt) {
    Domain D = as_interval_domain(D0);
    QuadResult out;
    if (D.dim() == 1 && D.shape() == Domain::Shape::interval_union) {
        std::vector<double> vals, errs;
        bool conv = true;
        for (const auto& p : D.intervals().parts()) {
            if (!p.bounded()) fail(errc::schema, "modular_la: unbounded interval");
            Profile1D pf = f.profile_on(p.lo, p.hi);
            if (pf.sup_abs == 0 || pf.lo >= pf.hi) continue;
            QuadOptions q;
            q.tol_rel = opt.tol_rel;
            q.breakpoints = pf.breakpoints;
            QuadResult r = integrate([&](double x) { return nf(std::fabs(pf.eval(x))); }, pf.lo,
                                     pf.hi, q);
            out.panels += r.panels;
            if (r.diverged) return r;
            vals.push_back(r.value);
            errs.push_back(r.abs_error_estimate);
            conv = conv && r.converged;
        }
        out.value = pairwise_sum(vals);
        out.abs_error_estimate = pairwise_sum(errs);
        out.converged = conv;
        return out;
    }
    if (D.dim() == 2) {
        double xlo = std::max(f.bbox_lo[0], -1e6), xhi = std::min(f.bbox_hi[0], 1e6);
        double ylo = std::max(f.bbox_lo[1], -1e6), yhi = std::min(f.bbox_hi[1], 1e6);
        if (D.shape() == Domain::Shape::box) {
            xlo = std::max(xlo, D.box_lo()[0]);
            xhi = std::min(xhi, D.box_hi()[0]);
            ylo = std::max(ylo, D.box_lo()[1]);
            yhi = std::min(yhi, D.box_hi()[1]);
        }
        QuadOptions q;
        q.tol_rel = opt.tol_rel;
        auto integrand = [&](double x, double y) {
            Point p{x, y};
            if (!D.membership(p)) return 0.0;
            return nf(std::fabs(f(x, y)));
        };
        return integrate2d(integrand, xlo, xhi, ylo, yhi, q);
    }
    fail(errc::schema, "modular_la: unsupported domain");
}

// ---------------------------------------------------------------------------
// modular_hardy
// ---------------------------------------------------------------------------

namespace {

// Int_0^h A(|g(edge +- xi)| / xi^s) d xi with geometric grading toward xi = 0.
QuadResult hardy_half(const NFunction& nf, double edge, int dir, double h, double s,
                      const Profile1D& g, const ModularOptions& opt) {
    QuadResult out;
    KahanSum total, errs;
    ShellTracker shells;
    double hi = h;
    // the profile vanishes outside [g.lo, g.hi]; below that depth nothing contributes
    double support_floor = 0.0;
    if (dir > 0) support_floor = std::max(0.0, g.lo - edge);
    else support_floor = std::max(0.0, edge - g.hi);

    for (int k = 0; k < opt.max_shells; ++k) {
        double lo = hi / 2;
        QuadOptions q;
        q.tol_rel = opt.tol_rel / 2;
        q.tol_abs = std::max(opt.tol_abs / 16,
                             opt.tol_rel * std::fabs(total.value()) / 256);
        q.max_panels = 2000;
        for (double b : g.breakpoints) {
            double xi = dir > 0 ? b - edge : edge - b;
            if (xi > lo && xi < hi) q.breakpoints.push_back(xi);
        }
        auto integrand = [&](double xi) {
            double v = std::fabs(g.eval(edge + dir * xi));
            return v > 0 ? nf(v / std::pow(xi, s)) : 0.0;
        };
        QuadResult r = integrate(integrand, lo, hi, q);
        out.panels += r.panels;
        if (r.diverged) {
            out.value = kInf;
            out.diverged = true;
            return out;
        }
        total.add(r.value);
        errs.add(r.abs_error_estimate);
        shells.sums.push_back(r.value);
        if (shells.diverging(opt.tol_abs + opt.tol_rel * std::fabs(total.value()))) {
            out.value = kInf;
            out.diverged = true;
            return out;
        }
        hi = lo;
        if (hi <= support_floor) break;
        if (k > 8 && shells.sums.back() <=
                         opt.tol_abs / 8 + opt.tol_rel * std::fabs(total.value()) / 8 &&
            shells.sums[shells.sums.size() - 2] <=
                opt.tol_abs / 8 + opt.tol_rel * std::fabs(total.value()) / 8)
            break;
    }
    out.value = total.value();
    out.abs_error_estimate = errs.value();
    out.converged =
        out.abs_error_estimate <= opt.tol_abs + opt.tol_rel * std::fabs(out.value);
    return out;
}

} // namespace

QuadResult modular_hardy(const NFunction& nf, const Domain& D0, double s, const TestFunction& f,
                         ModularOptions opt) {
    Domain D = as_interval_domain(D0);
    if (!(s > 0 && s < 1)) fail(errc::schema, "modular_hardy: s must lie in (0,1)");
    if (D.dim() == 1 && D.shape() == Domain::Shape::interval_union) {
        QuadResult out;
        std::vector<double> vals, errs;
        for (const auto& p : D.intervals().parts()) {
            if (!p.bounded()) fail(errc::schema, "modular_hardy: unbounded interval");
            Profile1D pf = f.profile_on(p.lo, p.hi);
            if (pf.sup_abs == 0) continue;
            double mid = 0.5 * (p.lo + p.hi);
            QuadResult l = hardy_half(nf, p.lo, +1, mid - p.lo, s, pf, opt);
            out.panels += l.panels;
            if (l.diverged) return l;
            QuadResult r = hardy_half(nf, p.hi, -1, p.hi - mid, s, pf, opt);
            out.panels += r.panels;
            if (r.diverged) return r;
            vals.push_back(l.value);
            vals.push_back(r.value);
            errs.push_back(l.abs_error_estimate);
            errs.push_back(r.abs_error_estimate);
        }
        out.value = pairwise_sum(vals);
        out.abs_error_estimate = pairwise_sum(errs);
        out.converged =
            out.abs_error_estimate <= opt.tol_abs + opt.tol_rel * std::fabs(out.value);
        return out;
    }
    if (D.dim() == 2) {
        // graded 2-D quadrature driven by the adaptive rectangles; delta_D is exact
        double xlo = f.bbox_lo[0], xhi = f.bbox_hi[0];
        double ylo = f.bbox_lo[1], yhi = f.bbox_hi[1];
        QuadOptions q;
        q.tol_rel = opt.tol_rel;
        auto integrand = [&](double x, double y) {
            Point p{x, y};
            double d = D.dist_boundary(p);
            if (d <= 0) return 0.0;
            double v = std::fabs(f(x, y));
            return v > 0 ? nf(v / std::pow(d, s)) : 0.0;
        };
        return integrate2d(integrand, xlo, xhi, ylo, yhi, q);
    }
    fail(errc::schema, "modular_hardy: unsupported domain");
}

// ---------------------------------------------------------------------------
// modular_wsa
// ---------------------------------------------------------------------------

namespace {

// Cartesian 2-D engine for box domains (difference-variable shells; no polar
// decomposition, so the polar identity check stays two-route).
QuadResult wsa_2d_box(const NFunction& nf, const Domain& D, double s, const TestFunction& f,
                      const ModularOptions& opt) {
    const double bx0 = D.box_lo()[0], bx1 = D.box_hi()[0];
    const double by0 = D.box_lo()[1], by1 = D.box_hi()[1];
    const double wx = bx1 - bx0, wy = by1 - by0;
    const double S = std::max(wx, wy);
    const double area = wx * wy;

    QuadResult out;
    auto K = [&](double z1, double z2) -> double {
        double xl = bx0 + std::max(0.0, -z1), xh = bx1 - std::max(0.0, z1);
        double yl = by0 + std::max(0.0, -z2), yh = by1 - std::max(0.0, z2);
        if (xl >= xh || yl >= yh) return 0.0;
        double rn = z1 * z1 + z2 * z2;
        double r = std::sqrt(rn);
        double rs = std::pow(r, s);
        QuadOptions q;
        q.tol_rel = opt.tol_rel / 2;
        q.max_panels = 600;
        QuadResult inner = integrate2d(
            [&](double x, double y) {
                double d = std::fabs(f(x + z1, y + z2) - f(x, y));
                return d > 0 ? nf(d / rs) : 0.0;
            },
            xl, xh, yl, yh, q);
        out.panels += inner.panels;
        return inner.value / rn;
    };

    KahanSum total, errsum;
    double hi = S;
    for (int k = 0; k < opt.max_shells; ++k) {
        double lo = hi / 2;
        // square annulus |z|_inf in [lo, hi]: top/bottom strips + side pieces
        struct R {
            double x0, x1, y0, y1;
        };
        R rects[4] = {{-hi, hi, lo, hi}, {-hi, hi, -hi, -lo}, {-hi, -lo, -lo, lo}, {lo, hi, -lo, lo}};
        double shell = 0, shell_err = 0;
        for (const R& rc : rects) {
            // clip to the admissible difference range
            double x0 = std::max(rc.x0, -wx), x1 = std::min(rc.x1, wx);
            double y0 = std::max(rc.y0, -wy), y1 = std::min(rc.y1, wy);
            if (x0 >= x1 || y0 >= y1) continue;
            QuadOptions q;
            q.tol_rel = opt.tol_rel / 2;
            q.max_panels = 600;
            QuadResult rr = integrate2d(K, x0, x1, y0, y1, q);
            shell += rr.value;
            shell_err += rr.abs_error_estimate;
        }
        total.add(shell);
        errsum.add(shell_err);
        // analytic diagonal tail over |z| <= lo sqrt(2)
        double tail = f.lip > 0 ? 2 * kPi * area / (1.0 - s) *
                                      nf(f.lip * std::pow(lo * std::sqrt(2.0), 1.0 - s))
                                : 0.0;
        if (tail <= opt.tol_abs / 4 + opt.tol_rel * std::fabs(total.value()) / 4) {
            errsum.add(tail);
            out.value = total.value();
            out.abs_error_estimate = errsum.value();
            out.converged = out.abs_error_estimate <=
                            opt.tol_abs + opt.tol_rel * std::fabs(out.value);
            return out;
        }
        hi = lo;
    }
    out.value = total.value();
    out.abs_error_estimate = errsum.value();
    out.converged = false;
    return out;
}

} // namespace

QuadResult modular_wsa(const NFunction& nf, const Domain& D0, double s, const TestFunction& f,
                       Region region, ModularOptions opt) {
    Domain D = as_interval_domain(D0);
    if (!(s > 0 && s < 1)) fail(errc::schema, "modular_wsa: s must lie in (0,1)");
    if (D.dim() == 1 && D.shape() == Domain::Shape::interval_union)
        return wsa_1d(nf, D.intervals(), s, f, region, opt);
    if (D.dim() == 2 && D.shape() == Domain::Shape::box) {
        if (region == Region::full_space)
            fail(errc::schema, "modular_wsa: full-space region is 1-D only");
        return wsa_2d_box(nf, D, s, f, opt);
    }
    fail(errc::schema, "modular_wsa: unsupported domain/region");
}

// ---------------------------------------------------------------------------
// polar identity (N = 2)
// ---------------------------------------------------------------------------

std::pair<QuadResult, QuadResult> polar_identity_check(const NFunction& nf, const Domain& D,
                                                       double s, const TestFunction& f,
                                                       int n_angles, ModularOptions opt) {
    if (D.dim() != 2) fail(errc::schema, "polar_identity_check: N = 2 only");
    if (n_angles < 8) fail(errc::schema, "polar_identity_check: too few angles");

    QuadResult lhs = modular_wsa(nf, D, s, f, Region::domain_x_domain, opt);
    lhs.value *= 2.0;
    lhs.abs_error_estimate *= 2.0;

    // rhs: midpoint rule over S^1, adaptive over the perpendicular offset,
    // 1-D section seminorm per (omega, tau)
    QuadResult rhs;
    std::vector<double> contrib(n_angles, 0.0), conerr(n_angles, 0.0);
    bool conv = true;
    for (int i = 0; i < n_angles; ++i) {
        double phi = 2.0 * kPi * (i + 0.5) / n_angles;
        Point omega{std::cos(phi), std::sin(phi)};
        Point perp{-omega[1], omega[0]};
        // offset range: projection of the domain onto omega^perp
        double tlo = kInf, thi = -kInf;
        if (D.shape() == Domain::Shape::box) {
            for (double cx : {D.box_lo()[0], D.box_hi()[0]})
                for (double cy : {D.box_lo()[1], D.box_hi()[1]}) {
                    double t = cx * perp[0] + cy * perp[1];
                    tlo = std::min(tlo, t);
                    thi = std::max(thi, t);
                }
        } else {
            fail(errc::schema, "polar_identity_check: box domains only");
        }
        auto section_value = [&](double tau) -> double {
            Point base{tau * perp[0], tau * perp[1]};
            LineSection ls = line_section(D, base, omega);
            if (ls.section.empty()) return 0.0;
            TestFunction g;
            g.dim = 1;
            auto ev = f.eval;
            double b0 = base[0], b1 = base[1], w0 = omega[0], w1 = omega[1];
            g.eval = [ev, b0, b1, w0, w1](const double* t) {
                double p[2] = {b0 + t[0] * w0, b1 + t[0] * w1};
                return ev(p);
            };
            g.bbox_lo = {ls.section.lo()};
            g.bbox_hi = {ls.section.hi()};
            g.lip = f.lip;
            g.sup_abs = f.sup_abs;
            ModularOptions so = opt;
            so.tol_rel = opt.tol_rel;
            QuadResult r = wsa_1d(nf, ls.section, s, g, Region::domain_x_domain, so);
            rhs.panels += r.panels;
            if (!r.converged) conv = false;
            return r.value;
        };
        QuadOptions q;
        q.tol_rel = opt.tol_rel;
        q.max_panels = 600;
        QuadResult ti = integrate(section_value, tlo, thi, q);
        contrib[i] = ti.value;
        conerr[i] = ti.abs_error_estimate;
        if (!ti.converged) conv = false;
    }
    double w = 2.0 * kPi / n_angles;
    rhs.value = w * pairwise_sum(contrib);
    rhs.abs_error_estimate = w * pairwise_sum(conerr);
    rhs.converged = conv;
    return {lhs, rhs};
}

} // namespace orlicz
