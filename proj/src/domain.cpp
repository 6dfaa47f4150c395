#include "orlicz/domain.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

double norm2(const Point& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dist(const Point& x, const Point& y) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
}

// distance from p to the segment (x0,y0)-(x1,y1)
double dist_segment(double px, double py, double x0, double y0, double x1, double y1) {
    double dx = x1 - x0, dy = y1 - y0;
    double L2 = dx * dx + dy * dy;
    double t = L2 > 0 ? ((px - x0) * dx + (py - y0) * dy) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double qx = x0 + t * dx, qy = y0 + t * dy;
    return std::hypot(px - qx, py - qy);
}

// distance from p to the ray from (x0,y0) with direction (dx,dy), t >= 0
double dist_ray(double px, double py, double x0, double y0, double dx, double dy) {
    double L2 = dx * dx + dy * dy;
    double t = std::max(0.0, ((px - x0) * dx + (py - y0) * dy) / L2);
    return std::hypot(px - (x0 + t * dx), py - (y0 + t * dy));
}

} // namespace

double PiecewiseLinear::operator()(double x) const {
    if (xs.empty()) fail(errc::schema, "piecewise-linear graph needs breakpoints");
    if (x <= xs.front()) return ys.front() + slope_left * (x - xs.front());
    if (x >= xs.back()) return ys.back() + slope_right * (x - xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = std::size_t(it - xs.begin()) - 1;
    double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + t * (ys[i + 1] - ys[i]);
}

double PiecewiseLinear::lip() const {
    double m = std::max(std::fabs(slope_left), std::fabs(slope_right));
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        m = std::max(m, std::fabs((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])));
    return m;
}

// ---------------------------------------------------------------------------
// factories
// ---------------------------------------------------------------------------

Domain Domain::interval_union(IntervalUnion iu) {
    if (iu.empty()) fail(errc::schema, "interval_union: empty");
    Domain d;
    d.shape_ = Shape::interval_union;
    d.dim_ = 1;
    d.iu_ = std::move(iu);
    return d;
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.empty() || lo.size() != hi.size()) fail(errc::schema, "box: bad extents");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) fail(errc::schema, "box: lo >= hi");
    Domain d;
    d.shape_ = Shape::box;
    d.dim_ = int(lo.size());
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
}

Domain Domain::ball(Point center, double radius) {
    if (center.empty() || !(radius > 0)) fail(errc::schema, "ball: bad parameters");
    Domain d;
    d.shape_ = Shape::ball;
    d.dim_ = int(center.size());
    d.center_ = std::move(center);
    d.radius_ = radius;
    return d;
}

Domain Domain::annulus_union(Point center, std::vector<std::pair<double, double>> rings) {
    if (center.empty() || rings.empty()) fail(errc::schema, "annulus_union: bad parameters");
    std::sort(rings.begin(), rings.end());
    double prev = 0;
    for (auto& [ri, ro] : rings) {
        if (!(ri >= prev && ro > ri)) fail(errc::schema, "annulus_union: rings must be disjoint");
        prev = ro;
    }
    Domain d;
    d.shape_ = Shape::annulus_union;
    d.dim_ = int(center.size());
    d.center_ = std::move(center);
    d.rings_ = std::move(rings);
    return d;
}

Domain Domain::punctured_space(Point point) {
    if (point.empty()) fail(errc::schema, "punctured_space: bad point");
    Domain d;
    d.shape_ = Shape::punctured_space;
    d.dim_ = int(point.size());
    d.center_ = std::move(point);
    return d;
}

Domain Domain::complement_of_box(std::vector<double> lo, std::vector<double> hi) {
    Domain inner = box(std::move(lo), std::move(hi));
    inner.shape_ = Shape::complement_of_box;
    return inner;
}

Domain Domain::half_space_above_graph(PiecewiseLinear graph) {
    if (graph.xs.size() != graph.ys.size() || graph.xs.empty())
        fail(errc::schema, "half_space_above_graph: bad breakpoints");
    for (std::size_t i = 1; i < graph.xs.size(); ++i)
        if (!(graph.xs[i] > graph.xs[i - 1]))
            fail(errc::schema, "half_space_above_graph: breakpoints must increase");
    Domain d;
    d.shape_ = Shape::half_space_above_graph;
    d.dim_ = 2;
    d.graph_ = std::move(graph);
    return d;
}

Domain Domain::strip_union(IntervalUnion cross_section) {
    if (cross_section.empty() || !cross_section.bounded())
        fail(errc::schema, "strip_union: cross-section must be a bounded interval union");
    Domain d;
    d.shape_ = Shape::strip_union;
    d.dim_ = 2;
    d.iu_ = std::move(cross_section);
    return d;
}

Domain Domain::lattice_holes(double hole_radius) {
    if (!(hole_radius > 0 && hole_radius < 0.5))
        fail(errc::schema, "lattice_holes: hole radius must lie in (0, 1/2)");
    Domain d;
    d.shape_ = Shape::lattice_holes;
    d.dim_ = 2;
    d.hole_radius_ = hole_radius;
    return d;
}

// ---------------------------------------------------------------------------
// basic queries
// ---------------------------------------------------------------------------

bool Domain::bounded() const {
    switch (shape_) {
    case Shape::interval_union:
        return iu_.bounded();
    case Shape::box:
    case Shape::ball:
    case Shape::annulus_union:
        return true;
    default:
        return false;
    }
}

double Domain::diameter() const {
    switch (shape_) {
    case Shape::interval_union:
        return iu_.bounded() ? iu_.hi() - iu_.lo() : kInf;
    case Shape::box: {
        double s = 0;
        for (std::size_t i = 0; i < lo_.size(); ++i) s += (hi_[i] - lo_[i]) * (hi_[i] - lo_[i]);
        return std::sqrt(s);
    }
    case Shape::ball:
        return 2 * radius_;
    case Shape::annulus_union:
        return 2 * rings_.back().second;
    default:
        return kInf;
    }
}

std::string Domain::name() const {
    switch (shape_) {
    case Shape::interval_union:
        return "interval_union";
    case Shape::box:
        return "box";
    case Shape::ball:
        return "ball";
    case Shape::annulus_union:
        return "annulus_union";
    case Shape::punctured_space:
        return "punctured_space";
    case Shape::complement_of_box:
        return "complement_of_box";
    case Shape::half_space_above_graph:
        return "half_space_above_graph";
    case Shape::strip_union:
        return "strip_union";
    case Shape::lattice_holes:
        return "lattice_holes";
    }
    return "?";
}

bool Domain::membership(const Point& x) const {
    if (int(x.size()) != dim_) fail(errc::schema, "membership: dimension mismatch");
    switch (shape_) {
    case Shape::interval_union:
        return iu_.contains(x[0]);
    case Shape::box:
        for (std::size_t i = 0; i < lo_.size(); ++i)
            if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
        return true;
    case Shape::ball:
        return dist(x, center_) < radius_;
    case Shape::annulus_union: {
        double r = dist(x, center_);
        for (auto& [ri, ro] : rings_)
            if (r > ri && r < ro) return true;
        return false;
    }
    case Shape::punctured_space:
        return dist(x, center_) > 0;
    case Shape::complement_of_box:
        for (std::size_t i = 0; i < lo_.size(); ++i)
            if (x[i] < lo_[i] || x[i] > hi_[i]) return true;
        return false;
    case Shape::half_space_above_graph:
        return x[1] > graph_(x[0]);
    case Shape::strip_union:
        return iu_.contains(x[0]);
    case Shape::lattice_holes: {
        double nx = std::round(x[0]), ny = std::round(x[1]);
        return std::hypot(x[0] - nx, x[1] - ny) > hole_radius_;
    }
    }
    return false;
}

double Domain::dist_boundary(const Point& x) const {
    if (int(x.size()) != dim_) fail(errc::schema, "dist_boundary: dimension mismatch");
    switch (shape_) {
    case Shape::interval_union:
        return iu_.dist_boundary(x[0]);
    case Shape::box: {
        double m = kInf;
        for (std::size_t i = 0; i < lo_.size(); ++i)
            m = std::min(m, std::min(x[i] - lo_[i], hi_[i] - x[i]));
        return std::max(0.0, m);
    }
    case Shape::ball:
        return std::max(0.0, radius_ - dist(x, center_));
    case Shape::annulus_union: {
        double r = dist(x, center_);
        for (auto& [ri, ro] : rings_)
            if (r > ri && r < ro) return std::min(r - ri, ro - r);
        return 0.0;
    }
    case Shape::punctured_space:
        return dist(x, center_);
    case Shape::complement_of_box: {
        // distance from an exterior point to the closed box
        double s = 0;
        bool inside = true;
        for (std::size_t i = 0; i < lo_.size(); ++i) {
            double d = std::max({lo_[i] - x[i], 0.0, x[i] - hi_[i]});
            if (x[i] < lo_[i] || x[i] > hi_[i]) inside = false;
            s += d * d;
        }
        return inside ? 0.0 : std::sqrt(s);
    }
    case Shape::half_space_above_graph: {
        if (x[1] <= graph_(x[0])) return 0.0;
        double m = kInf;
        const auto& g = graph_;
        for (std::size_t i = 0; i + 1 < g.xs.size(); ++i)
            m = std::min(m, dist_segment(x[0], x[1], g.xs[i], g.ys[i], g.xs[i + 1], g.ys[i + 1]));
        m = std::min(m, dist_ray(x[0], x[1], g.xs.front(), g.ys.front(), -1.0, -g.slope_left));
        m = std::min(m, dist_ray(x[0], x[1], g.xs.back(), g.ys.back(), 1.0, g.slope_right));
        return m;
    }
    case Shape::strip_union:
        return iu_.dist_boundary(x[0]);
    case Shape::lattice_holes: {
        double nx = std::round(x[0]), ny = std::round(x[1]);
        return std::max(0.0, std::hypot(x[0] - nx, x[1] - ny) - hole_radius_);
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// finite-ball constant
// ---------------------------------------------------------------------------

double ball_condition(const Domain& D) {
    switch (D.shape()) {
    case Domain::Shape::interval_union:
        return D.intervals().bounded() ? D.intervals().max_half_length() : kInf;
    case Domain::Shape::box: {
        double m = kInf;
        for (std::size_t i = 0; i < D.box_lo().size(); ++i)
            m = std::min(m, (D.box_hi()[i] - D.box_lo()[i]) / 2.0);
        return m;
    }
    case Domain::Shape::ball:
        return D.radius();
    case Domain::Shape::annulus_union: {
        double m = 0;
        for (auto& [ri, ro] : D.rings()) m = std::max(m, (ro - ri) / 2.0);
        return m;
    }
    case Domain::Shape::punctured_space:
    case Domain::Shape::complement_of_box:
    case Domain::Shape::half_space_above_graph:
        return kInf;
    case Domain::Shape::strip_union:
        // strips are unbounded along the fibre but a ball must fit across
        return D.intervals().max_half_length();
    case Domain::Shape::lattice_holes:
        // deepest point of the unit lattice is the cell center
        return std::sqrt(0.5) - D.hole_radius();
    }
    return kInf;
}

// ---------------------------------------------------------------------------
// line sections
// ---------------------------------------------------------------------------

namespace {

void check_section_inputs(const Domain& D, const Point& x, const Point& omega) {
    if (int(x.size()) != D.dim() || int(omega.size()) != D.dim())
        fail(errc::schema, "line_section: dimension mismatch");
    double n = norm2(omega);
    if (std::fabs(n - 1.0) > 1e-12) fail(errc::schema, "line_section: |omega| != 1");
    double dot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * omega[i];
    if (std::fabs(dot) > 1e-12) fail(errc::schema, "line_section: base not in omega^perp");
}

// roots of |x + t w - c|^2 = r^2
bool sphere_hits(const Point& x, const Point& w, const Point& c, double r, double& t0, double& t1) {
    double b = 0, cc = -r * r;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - c[i];
        b += d * w[i];
        cc += d * d;
    }
    double disc = b * b - cc;
    if (disc <= 0) return false;
    double sq = std::sqrt(disc);
    t0 = -b - sq;
    t1 = -b + sq;
    return true;
}

} // namespace

LineSection line_section(const Domain& D, const Point& x, const Point& omega) {
    check_section_inputs(D, x, omega);
    std::vector<Interval> parts;
    switch (D.shape()) {
    case Domain::Shape::interval_union: {
        // omega = +-1 in 1-D; base is 0
        double w = omega[0];
        for (const auto& p : D.intervals().parts()) {
            double a = (p.lo - x[0]) / w, b = (p.hi - x[0]) / w;
            if (a > b) std::swap(a, b);
            parts.push_back({a, b});
        }
        break;
    }
    case Domain::Shape::box: {
        double lo = -kInf, hi = kInf;
        for (int i = 0; i < D.dim(); ++i) {
            if (omega[i] == 0.0) {
                if (!(x[i] > D.box_lo()[i] && x[i] < D.box_hi()[i])) { lo = 1; hi = 0; }
                continue;
            }
            double a = (D.box_lo()[i] - x[i]) / omega[i];
            double b = (D.box_hi()[i] - x[i]) / omega[i];
            if (a > b) std::swap(a, b);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        if (lo < hi) parts.push_back({lo, hi});
        break;
    }
    case Domain::Shape::ball: {
        double t0, t1;
        if (sphere_hits(x, omega, D.center(), D.radius(), t0, t1)) parts.push_back({t0, t1});
        break;
    }
    case Domain::Shape::annulus_union: {
        for (auto& [ri, ro] : D.rings()) {
            double o0, o1;
            if (!sphere_hits(x, omega, D.center(), ro, o0, o1)) continue;
            double i0, i1;
            if (ri > 0 && sphere_hits(x, omega, D.center(), ri, i0, i1)) {
                if (i0 > o0) parts.push_back({o0, i0});
                if (o1 > i1) parts.push_back({i1, o1});
            } else {
                parts.push_back({o0, o1});
            }
        }
        break;
    }
    case Domain::Shape::punctured_space: {
        // full line unless it passes through the puncture
        double tproj = 0, d2 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) tproj += (D.center()[i] - x[i]) * omega[i];
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = x[i] + tproj * omega[i] - D.center()[i];
            d2 += d * d;
        }
        if (d2 > 0)
            parts.push_back({-kInf, kInf});
        else {
            parts.push_back({-kInf, tproj});
            parts.push_back({tproj, kInf});
        }
        break;
    }
    case Domain::Shape::complement_of_box: {
        double lo = -kInf, hi = kInf;
        bool misses = false;
        for (int i = 0; i < D.dim(); ++i) {
            if (omega[i] == 0.0) {
                if (x[i] < D.box_lo()[i] || x[i] > D.box_hi()[i]) misses = true;
                continue;
            }
            double a = (D.box_lo()[i] - x[i]) / omega[i];
            double b = (D.box_hi()[i] - x[i]) / omega[i];
            if (a > b) std::swap(a, b);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        if (misses || lo >= hi) {
            parts.push_back({-kInf, kInf});
        } else {
            parts.push_back({-kInf, lo});
            parts.push_back({hi, kInf});
        }
        break;
    }
    case Domain::Shape::half_space_above_graph: {
        // h(t) = (x + t w)_2 - Phi((x + t w)_1), piecewise linear in t
        const auto& g = D.graph();
        std::vector<double> ts;
        if (omega[0] != 0.0)
            for (double bx : g.xs) ts.push_back((bx - x[0]) / omega[0]);
        std::sort(ts.begin(), ts.end());
        auto h = [&](double t) { return x[1] + t * omega[1] - g(x[0] + t * omega[0]); };
        // node list with synthetic far endpoints
        double far = 1.0;
        for (double t : ts) far = std::max(far, std::fabs(t) + 1.0);
        far *= 4;
        std::vector<double> nodes;
        nodes.push_back(-far);
        for (double t : ts) nodes.push_back(t);
        nodes.push_back(far);
        // asymptotic slopes of h
        double slope_neg = omega[1] - (omega[0] > 0 ? g.slope_left : g.slope_right) * omega[0];
        double slope_pos = omega[1] - (omega[0] > 0 ? g.slope_right : g.slope_left) * omega[0];
        if (omega[0] == 0.0) slope_neg = slope_pos = omega[1];
        // collect sign-change roots piece by piece
        std::vector<std::pair<double, bool>> events; // (t, rising)
        auto add_root = [&](double a, double b) {
            double ha = h(a), hb = h(b);
            if ((ha > 0) == (hb > 0)) return;
            double t = a + (b - a) * (0.0 - ha) / (hb - ha);
            events.emplace_back(t, hb > 0);
        };
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) add_root(nodes[i], nodes[i + 1]);
        std::sort(events.begin(), events.end());
        bool open_neg_end = (h(-far) > 0) || (h(-far) == 0 && slope_neg < 0);
        double start = -kInf;
        bool inside = open_neg_end;
        for (auto& [t, rising] : events) {
            if (rising && !inside) {
                start = t;
                inside = true;
            } else if (!rising && inside) {
                parts.push_back({start, t});
                inside = false;
            }
        }
        if (inside) parts.push_back({start, kInf});
        (void)slope_pos;
        break;
    }
    case Domain::Shape::strip_union: {
        // section = (I - x_1)/omega_1 when the direction crosses the strips
        if (omega[0] == 0.0) {
            if (D.intervals().contains(x[0])) parts.push_back({-kInf, kInf});
            break;
        }
        for (const auto& p : D.intervals().parts()) {
            double a = (p.lo - x[0]) / omega[0], b = (p.hi - x[0]) / omega[0];
            if (a > b) std::swap(a, b);
            parts.push_back({a, b});
        }
        break;
    }
    case Domain::Shape::lattice_holes:
        fail(errc::degenerate_direction,
             "line_section: lattice_holes sections are not closed-form");
    }
    LineSection out;
    out.base = x;
    out.direction = omega;
    out.section = IntervalUnion(std::move(parts));
    return out;
}

// ---------------------------------------------------------------------------
// exterior measure evidence
// ---------------------------------------------------------------------------

MeasureEstimate exterior_measure_lb(const Domain& D, double R, long n_samples,
                                    std::uint64_t seed) {
    if (!(R > 0)) fail(errc::schema, "exterior_measure_lb: R must be positive");
    MeasureEstimate out;
    if (D.shape() == Domain::Shape::punctured_space) return out; // complement is a null set

    const int N = D.dim();
    // sampling window for the centers x
    std::vector<double> wlo(N), whi(N);
    switch (D.shape()) {
    case Domain::Shape::interval_union:
        wlo[0] = D.intervals().lo();
        whi[0] = D.intervals().hi();
        break;
    case Domain::Shape::box:
    case Domain::Shape::complement_of_box:
        for (int i = 0; i < N; ++i) {
            wlo[i] = D.box_lo()[i] - (D.shape() == Domain::Shape::complement_of_box ? R + 1 : 0);
            whi[i] = D.box_hi()[i] + (D.shape() == Domain::Shape::complement_of_box ? R + 1 : 0);
        }
        break;
    case Domain::Shape::ball:
    case Domain::Shape::annulus_union: {
        double r = D.shape() == Domain::Shape::ball ? D.radius() : D.rings().back().second;
        for (int i = 0; i < N; ++i) {
            wlo[i] = D.center()[i] - r;
            whi[i] = D.center()[i] + r;
        }
        break;
    }
    case Domain::Shape::strip_union: {
        wlo[0] = D.intervals().lo();
        whi[0] = D.intervals().hi();
        wlo[1] = -1;
        whi[1] = 1; // fibre direction is translation invariant
        break;
    }
    case Domain::Shape::lattice_holes: {
        // inf over x is attained within one period cell; use the design window
        const double W = 50;
        for (int i = 0; i < N; ++i) {
            wlo[i] = -W;
            whi[i] = W;
        }
        break;
    }
    case Domain::Shape::half_space_above_graph: {
        wlo[0] = D.graph().xs.front() - R;
        whi[0] = D.graph().xs.back() + R;
        double ymin = kInf, ymax = -kInf;
        for (double y : D.graph().ys) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        wlo[1] = ymin;
        whi[1] = ymax + R;
        break;
    }
    default:
        break;
    }

    Rng rng(seed);
    long nx = std::max<long>(32, n_samples / 4096);
    long ny = std::max<long>(128, n_samples / nx);
    double vol_ball = N == 1 ? 2 * R : 3.14159265358979323846 * R * R;
    if (N > 2) fail(errc::schema, "exterior_measure_lb: N <= 2 only");

    double min_measure = kInf, min_p = 0;
    Point x(N), y(N);
    for (long i = 0; i < nx; ++i) {
        // rejection-sample a center inside D
        bool found = false;
        for (int tries = 0; tries < 4096; ++tries) {
            for (int d = 0; d < N; ++d) x[d] = rng.uniform(wlo[d], whi[d]);
            if (D.membership(x)) {
                found = true;
                break;
            }
        }
        if (!found) continue;
        long hits = 0;
        for (long j = 0; j < ny; ++j) {
            // uniform point in B(x, R)
            if (N == 1) {
                y[0] = x[0] + rng.uniform(-R, R);
            } else {
                double u1, u2;
                do {
                    u1 = rng.uniform(-1, 1);
                    u2 = rng.uniform(-1, 1);
                } while (u1 * u1 + u2 * u2 > 1.0);
                y[0] = x[0] + R * u1;
                y[1] = x[1] + R * u2;
            }
            if (!D.membership(y)) ++hits;
        }
        double p = double(hits) / double(ny);
        double measure = vol_ball * p;
        if (measure < min_measure) {
            min_measure = measure;
            min_p = p;
        }
    }
    out.lower_bound = finite(min_measure) ? min_measure : 0.0;
    out.std_error = vol_ball * std::sqrt(std::max(0.0, min_p * (1 - min_p)) / double(ny));
    out.x_samples = nx;
    out.y_samples = ny;
    return out;
}

} // namespace orlicz
