#include "orlicz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace orlicz {

namespace {

// Gauss-Kronrod 7-15 nodes on [-1,1] (QUADPACK dqk15 constants).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Seg {
    double a, b, value, error;
};

struct SegWorse {
    bool operator()(const Seg& x, const Seg& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a; // deterministic tie-break
    }
};

// 2-D helpers: Gauss-Legendre nodes, orders 4 and 8, on [-1,1].
constexpr double gl4_x[2] = {0.339981043584856264802665759103245,
                             0.861136311594052575223946488892809};
constexpr double gl4_w[2] = {0.652145154862546142626936050778001,
                             0.347854845137453857373063949221999};
constexpr double gl8_x[4] = {0.183434642495649804939476142360184,
                             0.525532409916328985817739049189246,
                             0.796666477413626739591553936475830,
                             0.960289856497536231683560868569473};
constexpr double gl8_w[4] = {0.362683783378361982965150449277196,
                             0.313706645877887287337962201986601,
                             0.222381034453374470544355994426241,
                             0.101228536290376259152531354309962};

struct Rect {
    double ax, bx, ay, by, value, error;
};

struct RectWorse {
    bool operator()(const Rect& x, const Rect& y) const {
        if (x.error != y.error) return x.error < y.error;
        if (x.ax != y.ax) return x.ax > y.ax;
        return x.ay > y.ay;
    }
};

bool rect_pass(const Fn2& f, Rect& r) {
    const double cx = 0.5 * (r.ax + r.bx), hx = 0.5 * (r.bx - r.ax);
    const double cy = 0.5 * (r.ay + r.by), hy = 0.5 * (r.by - r.ay);
    double i4 = 0, i8 = 0;
    double f8[8][8];
    double nx8[8], wx8[8];
    for (int i = 0; i < 4; ++i) {
        nx8[i] = -gl8_x[i];
        nx8[7 - i] = gl8_x[i];
        wx8[i] = wx8[7 - i] = gl8_w[i];
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double v = f(cx + hx * nx8[i], cy + hy * nx8[j]);
            if (!finite(v)) return false;
            f8[i][j] = v;
            i8 += wx8[i] * wx8[j] * v;
        }
    (void)f8;
    double nx4[4], wx4[4];
    for (int i = 0; i < 2; ++i) {
        nx4[i] = -gl4_x[i];
        nx4[3 - i] = gl4_x[i];
        wx4[i] = wx4[3 - i] = gl4_w[i];
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double v = f(cx + hx * nx4[i], cy + hy * nx4[j]);
            if (!finite(v)) return false;
            i4 += wx4[i] * wx4[j] * v;
        }
    const double area = hx * hy;
    r.value = i8 * area;
    r.error = std::abs(i8 - i4) * area;
    return true;
}

} // namespace

void gk15(const Fn1& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xgk[i]);
        fv[14 - i] = f(c + h * xgk[i]);
    }
    fv[7] = f(c);
    double resk = wgk[7] * fv[7];
    double resg = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += wgk[i] * (fv[i] + fv[14 - i]);
    resg += wg[0] * (fv[1] + fv[13]) + wg[1] * (fv[3] + fv[11]) + wg[2] * (fv[5] + fv[9]);
    value = resk * h;
    double err = std::abs(resk - resg) * h;
    // QUADPACK-style rescaling of the raw difference
    double resabs = 0;
    for (int i = 0; i < 7; ++i) resabs += wgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    resabs = (resabs + wgk[7] * std::abs(fv[7])) * std::abs(h);
    if (resabs > 0 && err > 0) {
        double scale = std::pow(200.0 * err / resabs, 1.5);
        err = resabs * std::min(1.0, scale);
    }
    error = err;
}

QuadResult integrate(const Fn1& f, double a, double b, const QuadOptions& opt) {
    QuadResult res;
    if (!(a < b)) {
        res.converged = true;
        return res;
    }

    std::vector<double> nodes;
    nodes.push_back(a);
    for (double x : opt.breakpoints)
        if (x > a && x < b) nodes.push_back(x);
    nodes.push_back(b);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::priority_queue<Seg, std::vector<Seg>, SegWorse> heap;
    bool nonfinite = false;
    auto push_seg = [&](double lo, double hi) {
        Seg s{lo, hi, 0, 0};
        gk15(f, lo, hi, s.value, s.error);
        ++res.panels;
        if (!finite(s.value)) nonfinite = true;
        heap.push(s);
    };
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) push_seg(nodes[i], nodes[i + 1]);

    double tot_val = 0, tot_err = 0;
    auto refresh = [&] {
        // exact recompute of totals (heap is small; avoids drift)
        std::vector<Seg> all;
        all.reserve(heap.size());
        while (!heap.empty()) {
            all.push_back(heap.top());
            heap.pop();
        }
        std::sort(all.begin(), all.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
        std::vector<double> vs, es;
        vs.reserve(all.size());
        es.reserve(all.size());
        for (const auto& s : all) {
            vs.push_back(s.value);
            es.push_back(s.error);
        }
        tot_val = pairwise_sum(vs);
        tot_err = pairwise_sum(es);
        for (const auto& s : all) heap.push(s);
    };
    refresh();

    long iter_since_refresh = 0;
    while (!nonfinite && tot_err > opt.tol_abs + opt.tol_rel * std::abs(tot_val) &&
           res.panels < opt.max_panels) {
        Seg worst = heap.top();
        heap.pop();
        tot_val -= worst.value;
        tot_err -= worst.error;
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) { // interval exhausted at double precision
            heap.push(worst);
            break;
        }
        Seg l{worst.a, mid, 0, 0}, r{mid, worst.b, 0, 0};
        gk15(f, l.a, l.b, l.value, l.error);
        gk15(f, r.a, r.b, r.value, r.error);
        res.panels += 2;
        if (!finite(l.value) || !finite(r.value)) nonfinite = true;
        heap.push(l);
        heap.push(r);
        tot_val += l.value + r.value;
        tot_err += l.error + r.error;
        if (++iter_since_refresh >= 64) {
            refresh();
            iter_since_refresh = 0;
        }
    }
    refresh();

    if (nonfinite) {
        res.value = kInf;
        res.abs_error_estimate = kInf;
        res.diverged = true;
        return res;
    }
    res.value = tot_val;
    res.abs_error_estimate = tot_err;
    res.converged = tot_err <= opt.tol_abs + opt.tol_rel * std::abs(tot_val);
    return res;
}

QuadResult integrate2d(const Fn2& f, double ax, double bx, double ay, double by,
                       const QuadOptions& opt) {
    QuadResult res;
    if (!(ax < bx && ay < by)) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Rect, std::vector<Rect>, RectWorse> heap;
    bool nonfinite = false;
    auto push_rect = [&](double x0, double x1, double y0, double y1) {
        Rect r{x0, x1, y0, y1, 0, 0};
        if (!rect_pass(f, r)) nonfinite = true;
        res.panels++;
        heap.push(r);
    };
    push_rect(ax, bx, ay, by);

    double tot_val = 0, tot_err = 0;
    auto refresh = [&] {
        std::vector<Rect> all;
        all.reserve(heap.size());
        while (!heap.empty()) {
            all.push_back(heap.top());
            heap.pop();
        }
        std::sort(all.begin(), all.end(), [](const Rect& x, const Rect& y) {
            if (x.ax != y.ax) return x.ax < y.ax;
            return x.ay < y.ay;
        });
        std::vector<double> vs, es;
        for (const auto& r : all) {
            vs.push_back(r.value);
            es.push_back(r.error);
        }
        tot_val = pairwise_sum(vs);
        tot_err = pairwise_sum(es);
        for (const auto& r : all) heap.push(r);
    };
    refresh();

    long iters = 0;
    while (!nonfinite && tot_err > opt.tol_abs + opt.tol_rel * std::abs(tot_val) &&
           res.panels < opt.max_panels) {
        Rect w = heap.top();
        heap.pop();
        tot_val -= w.value;
        tot_err -= w.error;
        bool split_x = (w.bx - w.ax) >= (w.by - w.ay);
        double m = split_x ? 0.5 * (w.ax + w.bx) : 0.5 * (w.ay + w.by);
        Rect r1 = w, r2 = w;
        if (split_x) {
            if (!(m > w.ax && m < w.bx)) {
                heap.push(w);
                break;
            }
            r1.bx = m;
            r2.ax = m;
        } else {
            if (!(m > w.ay && m < w.by)) {
                heap.push(w);
                break;
            }
            r1.by = m;
            r2.ay = m;
        }
        if (!rect_pass(f, r1) || !rect_pass(f, r2)) nonfinite = true;
        res.panels += 2;
        heap.push(r1);
        heap.push(r2);
        tot_val += r1.value + r2.value;
        tot_err += r1.error + r2.error;
        if (++iters % 64 == 0) refresh();
    }
    refresh();

    if (nonfinite) {
        res.value = kInf;
        res.abs_error_estimate = kInf;
        res.diverged = true;
        return res;
    }
    res.value = tot_val;
    res.abs_error_estimate = tot_err;
    res.converged = tot_err <= opt.tol_abs + opt.tol_rel * std::abs(tot_val);
    return res;
}

} // namespace orlicz
