#include "orlicz/variational.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace orlicz {

namespace {

constexpr double kPi = 3.14159265358979323846;

Domain spline_domain(const Domain& D) {
    if (D.shape() == Domain::Shape::ball && D.dim() == 1)
        return Domain::interval(D.center()[0] - D.radius(), D.center()[0] + D.radius());
    if (D.shape() != Domain::Shape::interval_union || D.dim() != 1)
        fail(errc::schema, "estimate_quotient: 1-D interval-union domains only");
    return D;
}

} // namespace

// ---------------------------------------------------------------------------
// TrialFamily
// ---------------------------------------------------------------------------

TrialFamily::TrialFamily(const IntervalUnion& U, int cells, Spline1D::Basis basis)
    : cells_(cells), total_(0) {
    for (const auto& p : U.parts()) {
        if (!p.bounded()) fail(errc::schema, "trial family needs bounded components");
        splines_.emplace_back(p.lo, p.hi, cells, basis);
        total_ += splines_.back().coef_count();
    }
}

void TrialFamily::set_coefficients(const std::vector<double>& c, double amplitude) {
    if (int(c.size()) != total_) fail(errc::schema, "trial coefficients: size mismatch");
    std::size_t k = 0;
    for (auto& sp : splines_)
        for (double& v : sp.coef()) v = amplitude * c[k++];
}

TestFunction TrialFamily::test_function() const {
    if (splines_.size() == 1) return TestFunction::from_spline(splines_[0]);
    TestFunction f;
    f.dim = 1;
    auto copies = std::make_shared<std::vector<Spline1D>>(splines_);
    f.eval = [copies](const double* x) {
        for (const auto& sp : *copies)
            if (x[0] > sp.a() && x[0] < sp.b()) return sp(x[0]);
        return 0.0;
    };
    f.bbox_lo = {splines_.front().a()};
    f.bbox_hi = {splines_.back().b()};
    double lip = 0, sup = 0;
    for (const auto& sp : splines_) {
        Profile1D p = sp.profile();
        lip = std::max(lip, p.lip);
        sup = std::max(sup, p.sup_abs);
        for (double b : p.breakpoints) f.breakpoints.push_back(b);
        f.breakpoints.push_back(sp.a());
        f.breakpoints.push_back(sp.b());
    }
    std::sort(f.breakpoints.begin(), f.breakpoints.end());
    f.lip = lip;
    f.sup_abs = sup;
    f.tag = "spline_union";
    return f;
}

TrialFamily TrialFamily::refined() const {
    TrialFamily out = *this;
    out.cells_ = cells_ * 2;
    out.total_ = 0;
    for (auto& sp : out.splines_) {
        sp = sp.refined();
        out.total_ += sp.coef_count();
    }
    return out;
}

std::vector<double> TrialFamily::base_profile() const {
    std::vector<double> c;
    for (const auto& sp : splines_) {
        int n = sp.coef_count();
        for (int i = 0; i < n; ++i) {
            // position of the i-th degree of freedom inside the component
            double t = double(i + 1) / double(n + 1);
            c.push_back(std::sin(kPi * t));
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// quotient of a concrete trial
// ---------------------------------------------------------------------------

double quotient_of(QuotientKind kind, const NFunction& nf, const Domain& D0, double s,
                   const TestFunction& f, double tol_rel, bool* denominator_zero,
                   double* num_scale_io) {
    Domain D = spline_domain(D0);
    ModularOptions mo;
    mo.tol_rel = tol_rel;
    mo.light = tol_rel >= 1e-5; // search-phase calls skip breakpoint seeding
    if (num_scale_io && *num_scale_io > 0 && mo.light) mo.scale_hint = *num_scale_io;
    if (denominator_zero) *denominator_zero = false;

    Region region = kind == QuotientKind::poincare_full ? Region::full_space
                                                        : Region::domain_x_domain;
    QuadResult num = modular_wsa(nf, D, s, f, region, mo);
    if (num_scale_io && finite(num.value)) *num_scale_io = std::fabs(num.value);
    if (num.diverged) return kInf;

    QuadResult den = kind == QuotientKind::hardy ? modular_hardy(nf, D, s, f, mo)
                                                 : modular_la(nf, D, f, mo);
    if (den.diverged) return 0.0; // divergent denominator drives the quotient to zero
    if (!(den.value > 1e-280)) {
        if (denominator_zero) *denominator_zero = true;
        return kInf;
    }
    return num.value / den.value;
}

// ---------------------------------------------------------------------------
// Nelder-Mead over spline coefficients
// ---------------------------------------------------------------------------

namespace {

struct NmResult {
    std::vector<double> x;
    double value = kInf;
    long evals = 0;
    std::vector<std::pair<long, double>> history;
};

template <typename F>
NmResult nelder_mead(const F& objective, std::vector<double> x0, double step, int max_iters) {
    const int n = int(x0.size());
    NmResult res;
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (int i = 1; i <= n; ++i) pts[i][i - 1] += step;
    for (int i = 0; i <= n; ++i) {
        vals[i] = objective(pts[i]);
        ++res.evals;
    }
    auto record = [&](long it) {
        int bi = int(std::min_element(vals.begin(), vals.end()) - vals.begin());
        if (res.history.empty() || vals[bi] < res.history.back().second)
            res.history.emplace_back(it, vals[bi]);
    };
    record(0);

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int iter = 0; iter < max_iters; ++iter) {
        // order
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        int best = idx[0], worst = idx[n], second = idx[n - 1];
        double spread = vals[worst] - vals[best];
        if (!(spread > 1e-12 * (std::fabs(vals[best]) + 1e-30))) break;

        for (int j = 0; j < n; ++j) {
            double c = 0;
            for (int i = 0; i <= n; ++i)
                if (i != worst) c += pts[i][j];
            centroid[j] = c / n;
        }
        auto blend = [&](std::vector<double>& out, double coeff) {
            for (int j = 0; j < n; ++j) out[j] = centroid[j] + coeff * (pts[worst][j] - centroid[j]);
        };
        blend(xr, -1.0);
        double fr = objective(xr);
        ++res.evals;
        if (fr < vals[best]) {
            blend(xe, -2.0);
            double fe = objective(xe);
            ++res.evals;
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            blend(xc, fr < vals[worst] ? -0.5 : 0.5);
            double fc = objective(xc);
            ++res.evals;
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                // shrink toward the best point
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int j = 0; j < n; ++j)
                        pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
                    vals[i] = objective(pts[i]);
                    ++res.evals;
                }
            }
        }
        record(iter + 1);
    }
    int bi = int(std::min_element(vals.begin(), vals.end()) - vals.begin());
    res.x = pts[bi];
    res.value = vals[bi];
    return res;
}

} // namespace

QuotientEstimate estimate_quotient(QuotientKind kind, const NFunction& nf, const Domain& D0,
                                   double s, const Budget& budget) {
    Domain D = spline_domain(D0);
    if (kind != QuotientKind::poincare_full && !D.bounded())
        fail(errc::schema, "estimate_quotient: H and P1 need a bounded domain");
    if (budget.grid_sizes.empty()) fail(errc::schema, "estimate_quotient: empty grid list");

    const bool homogeneous = nf.kind() == NFunction::Kind::power;

    QuotientEstimate out;
    out.kind = kind;
    TrialFamily family(D.intervals(), budget.grid_sizes.front(), budget.basis);

    // ratio of a coefficient vector at a fixed amplitude; the hint carries
    // the numerator magnitude across nearby evaluations
    auto ratio_at = [&](const TrialFamily& fam, const std::vector<double>& c, double amp,
                        double tol, double* hint = nullptr) -> double {
        TrialFamily work = fam;
        work.set_coefficients(c, amp);
        return quotient_of(kind, nf, D, s, work.test_function(), tol, nullptr, hint);
    };

    // minimize over the amplitude grid (log-spaced) with golden refinement
    auto best_amplitude = [&](const TrialFamily& fam, const std::vector<double>& c, double tol,
                              double* ratio_out) -> double {
        if (homogeneous) {
            *ratio_out = ratio_at(fam, c, 1.0, tol);
            return 1.0;
        }
        const int m = std::max(3, budget.amplitude_points);
        double best_v = kInf, best_la = 0;
        for (int i = 0; i < m; ++i) {
            double la = -3.0 + 6.0 * double(i) / (m - 1); // log10 amplitude
            double v = ratio_at(fam, c, std::pow(10.0, la), tol);
            if (v < best_v) {
                best_v = v;
                best_la = la;
            }
        }
        double span = 6.0 / (m - 1);
        double a = best_la - span, b = best_la + span;
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = ratio_at(fam, c, std::pow(10.0, x1), tol);
        double f2 = ratio_at(fam, c, std::pow(10.0, x2), tol);
        for (int it = 0; it < 24; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = ratio_at(fam, c, std::pow(10.0, x1), tol);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = ratio_at(fam, c, std::pow(10.0, x2), tol);
            }
            double v = std::min(f1, f2);
            if (v < best_v) {
                best_v = v;
                best_la = f1 < f2 ? x1 : x2;
            }
        }
        *ratio_out = best_v;
        return std::pow(10.0, best_la);
    };

    std::vector<double> warm;
    long iter_base = 0;

    for (std::size_t level = 0; level < budget.grid_sizes.size(); ++level) {
        if (level > 0) {
            int want = budget.grid_sizes[level];
            if (want != family.cells() * 2)
                fail(errc::schema, "estimate_quotient: grid sizes must double for warm starts");
            // refine both the family and the incumbent coefficients exactly
            TrialFamily coarse = family;
            coarse.set_coefficients(out.best_coefficients, 1.0);
            TrialFamily fineref = coarse.refined();
            family = family.refined();
            warm.clear();
            for (const auto& sp : fineref.splines())
                for (double v : sp.coef()) warm.push_back(v);
        }

        auto objective_for = [&](double amp, double* hint) {
            return [&, amp, hint](const std::vector<double>& c) {
                double v = ratio_at(family, c, amp, budget.search_tol, hint);
                return finite(v) ? v : 1e30;
            };
        };

        struct RestartResult {
            NmResult nm;
            double amplitude = 1.0;
            bool ok = false;
        };
        int restarts = level == 0 ? budget.restarts : std::max(2, budget.restarts / 2);
        auto run_restart = [&](int r) -> RestartResult {
            Rng rng(budget.seed * 1000003ull + 17ull * r + 1ull);
            std::vector<double> c0 = level == 0 || r > 0 ? family.base_profile() : warm;
            if (level > 0 && r == 0) c0 = warm;
            if (r > 0) {
                double scale = 0.2 + 0.6 * rng.uniform();
                for (double& v : c0) v = v * scale + 0.3 * (rng.uniform() - 0.5);
                if (level > 0) {
                    // perturb around the warm start instead of the sine bump
                    c0 = warm;
                    for (double& v : c0) v *= 1.0 + 0.2 * (rng.uniform() - 0.5);
                }
            }
            RestartResult rr;
            double ratio0;
            rr.amplitude = best_amplitude(family, c0, budget.search_tol, &ratio0);
            if (!finite(ratio0)) return rr;
            double num_scale = 0;
            auto obj = objective_for(rr.amplitude, &num_scale);
            rr.nm = nelder_mead(obj, c0, 0.15, budget.max_iters);
            // re-tune the amplitude at the optimum
            double ratio1;
            double amp1 = best_amplitude(family, rr.nm.x, budget.search_tol, &ratio1);
            if (ratio1 < rr.nm.value) {
                rr.nm.value = ratio1;
                rr.amplitude = amp1;
            }
            rr.ok = rr.nm.value < 1e29;
            return rr;
        };

        std::vector<RestartResult> results(restarts);
        if (budget.threads > 1) {
            std::vector<std::future<RestartResult>> futs;
            for (int r = 0; r < restarts; ++r)
                futs.push_back(std::async(std::launch::async, run_restart, r));
            for (int r = 0; r < restarts; ++r) results[r] = futs[r].get();
        } else {
            for (int r = 0; r < restarts; ++r) results[r] = run_restart(r);
        }

        int best_r = -1;
        for (int r = 0; r < restarts; ++r) {
            if (!results[r].ok) continue;
            if (best_r < 0 || results[r].nm.value < results[best_r].nm.value) best_r = r;
        }
        if (best_r < 0) fail(errc::degenerate_trial, "estimate_quotient: all restarts degenerate");

        const auto& win = results[best_r];
        out.best_coefficients = win.nm.x;
        out.best_amplitude = win.amplitude;
        out.search_value = win.nm.value;
        out.refinement_level = int(level);
        for (auto& [it, v] : win.nm.history) out.history.emplace_back(iter_base + it, v);
        iter_base += budget.max_iters;

        TrialFamily snapshot = family;
        snapshot.set_coefficients(out.best_coefficients, out.best_amplitude);
        out.level_values.emplace_back(
            family.cells(),
            quotient_of(kind, nf, D, s, snapshot.test_function(), budget.final_tol));
    }

    out.best_trial = family;
    out.best_trial.set_coefficients(out.best_coefficients, out.best_amplitude);
    out.value = out.level_values.back().second;
    return out;
}

// ---------------------------------------------------------------------------
// cutoff sweep
// ---------------------------------------------------------------------------

std::vector<SweepRow> cutoff_sweep(const NFunction& nf, const Domain& D, double s,
                                   const CutoffFamily& family, double tol_rel) {
    if (family.eps_list.empty()) fail(errc::schema, "cutoff_sweep: empty eps list");
    for (std::size_t i = 1; i < family.eps_list.size(); ++i)
        if (!(family.eps_list[i] < family.eps_list[i - 1]))
            fail(errc::schema, "cutoff_sweep: eps list must decrease");
    if (!D.bounded()) fail(errc::construction, "cutoff_sweep: bounded domains only");

    ModularOptions mo;
    mo.tol_rel = tol_rel;
    std::vector<SweepRow> rows;
    for (double eps : family.eps_list) {
        TestFunction f = TestFunction::cutoff(D, eps);
        SweepRow row;
        row.eps = eps;
        QuadResult num = modular_wsa(nf, D, s, f, Region::domain_x_domain, mo);
        row.numerator = num.value;
        QuadResult hden = modular_hardy(nf, D, s, f, mo);
        QuadResult pden = modular_la(nf, D, f, mo);
        row.hardy_denominator = hden.value;
        row.poincare_denominator = pden.value;
        if (hden.diverged) {
            row.hardy_denominator_divergent = true;
            row.hardy_quotient = 0.0; // the necessity mechanism: denominator blow-up
        } else {
            row.hardy_quotient = num.value / hden.value;
        }
        row.poincare_quotient = num.value / pden.value;
        rows.push_back(row);
    }
    return rows;
}

} // namespace orlicz
