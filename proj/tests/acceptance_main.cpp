// Acceptance suite: one check per criterion, each printing a PASS/FAIL line
// with the measured quantities. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/classifier.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/problem_io.hpp"
#include "orlicz/variational.hpp"

using namespace orlicz;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s criterion %2d %-22s %s  [%.1fs]\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename F>
void criterion(int id, const std::string& name, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, pass, detail, sec);
}

Status expect_fohi(int row, double s, double q) {
    double b = 1.0 / q;
    switch (row) {
    case 0:
        return s > b ? Status::holds : Status::fails;
    case 1:
        return s > b ? Status::holds : (s < b ? Status::fails : Status::unknown);
    case 2:
        return s > b ? Status::holds : Status::fails;
    default:
        return Status::fails;
    }
}

Status expect_rfopi(int row, double s, double q) {
    double b = 1.0 / q;
    switch (row) {
    case 0:
    case 1:
        return s > b ? Status::holds : (s < b ? Status::fails : Status::unknown);
    case 2:
        return s > b ? Status::holds : Status::fails;
    default:
        return Status::fails;
    }
}

const Domain kUnit = Domain::interval(0, 1);

} // namespace

int main() {
    std::printf("orlicz acceptance suite (version %s)\n", kVersion);

    // ------------------------------------------------------------------
    criterion(1, "table1 reproduction", [](std::string& detail) {
        int cells_checked = 0, mismatches = 0;
        for (double q : {1.5, 2.0, 3.0}) {
            std::vector<double> grid;
            for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
            grid.push_back(1.0 / q);
            Table1Report rep = table1(grid, q);
            for (int row = 0; row < 4; ++row)
                for (const auto& cell : rep.rows[row].cells) {
                    ++cells_checked;
                    if (cell.fohi != expect_fohi(row, cell.s, q)) ++mismatches;
                    if (cell.rfopi != expect_rfopi(row, cell.s, q)) ++mismatches;
                }
        }
        detail = std::to_string(cells_checked) + " grid cells, " + std::to_string(mismatches) +
                 " mismatches";
        return mismatches == 0;
    });

    // ------------------------------------------------------------------
    criterion(2, "alpha closed form", [](std::string& detail) {
        double worst = 0;
        for (double q : {1.5, 2.0, 3.0})
            for (double s : {0.2, 0.5, 0.8})
                for (double lam : {1e-3, 1e-1, 1.0, 10.0, 1e3}) {
                    double expect = std::pow(lam, q - 1.0 / s);
                    double got = alpha(NFunction::power(q), s, lam).value;
                    worst = std::max(worst, std::fabs(got - expect) / expect);
                }
        detail = "worst rel err " + format_double(worst);
        return worst < 1e-6;
    });

    // ------------------------------------------------------------------
    criterion(3, "beta limits", [](std::string& detail) {
        bool ok = true;
        auto p2 = NFunction::power(2);
        auto b03 = beta_limit(p2, 0.3);
        ok = ok && b03.classification == LimitClass::evidence_zero;
        auto b05 = beta_limit(p2, 0.5);
        ok = ok && b05.classification == LimitClass::evidence_positive &&
             std::fabs(b05.value - 0.5) < 1e-9;
        auto b07 = beta_limit(p2, 0.7);
        ok = ok && b07.classification == LimitClass::evidence_infinite;
        double worst_g = 0;
        for (double s : {0.3, 0.7}) {
            auto b = beta_limit(NFunction::llogl(), s);
            ok = ok && b.classification == LimitClass::evidence_zero;
            worst_g = std::max(worst_g, std::fabs(b.g_final));
        }
        ok = ok && worst_g < 1e-3;
        detail = "t^2: {0, 0.5, inf}; llogl |g_final| <= " + format_double(worst_g);
        return ok;
    });

    // ------------------------------------------------------------------
    criterion(4, "gagliardo oracle", [](std::string& detail) {
        auto p2 = NFunction::power(2);
        auto fx = TestFunction::identity_1d();
        ModularOptions opt;
        opt.tol_rel = 1e-7;
        double worst = 0;
        for (double s : {0.25, 0.5, 0.75}) {
            double expect = 1.0 / ((1 - s) * (3 - 2 * s));
            auto r = modular_wsa(p2, kUnit, s, fx, Region::domain_x_domain, opt);
            worst = std::max(worst, std::fabs(r.value - expect) / expect);
        }
        detail = "worst rel err " + format_double(worst);
        return worst < 1e-5;
    });

    // ------------------------------------------------------------------
    criterion(5, "polar identity (N=2)", [](std::string& detail) {
        auto box = Domain::box({0, 0}, {1, 1});
        auto f = TestFunction::tensor_bump_2d();
        ModularOptions opt;
        opt.tol_rel = 1e-4;
        double worst = 0;
        for (const NFunction& nf : {NFunction::power(2), NFunction::llogl()}) {
            auto [lhs, rhs] = polar_identity_check(nf, box, 0.5, f, 256, opt);
            double gap = std::fabs(lhs.value - rhs.value) / lhs.value;
            worst = std::max(worst, gap);
        }
        detail = "worst rel gap " + format_double(worst);
        return worst < 1e-3;
    });

    // ------------------------------------------------------------------
    criterion(6, "failure exhibition", [](std::string& detail) {
        auto p2 = NFunction::power(2);
        CutoffFamily fam;
        for (int k = 2; k <= 8; ++k) fam.eps_list.push_back(std::ldexp(1.0, -k));
        auto rows03 = cutoff_sweep(p2, kUnit, 0.3, fam, 1e-6);
        bool dec_p = true, dec_h = true;
        for (std::size_t i = 1; i < rows03.size(); ++i) {
            dec_p = dec_p && rows03[i].poincare_quotient < rows03[i - 1].poincare_quotient;
            dec_h = dec_h && rows03[i].hardy_quotient < rows03[i - 1].hardy_quotient;
        }
        double ratio = rows03.back().poincare_quotient / rows03.front().poincare_quotient;
        bool tail_ok = ratio < 0.1;

        auto rows05 = cutoff_sweep(p2, kUnit, 0.5, fam, 1e-6);
        bool dec_h5 = true;
        for (std::size_t i = 1; i < rows05.size(); ++i)
            dec_h5 = dec_h5 && rows05[i].hardy_quotient < rows05[i - 1].hardy_quotient;

        detail = "s=0.3 decreasing=" + std::string(dec_p && dec_h ? "yes" : "no") +
                 ", final/initial=" + format_double(ratio) +
                 " (<0.1 required); s=0.5 hardy decreasing=" + (dec_h5 ? "yes" : "no");
        return dec_p && dec_h && tail_ok && dec_h5;
    });

    // ------------------------------------------------------------------
    criterion(7, "positivity stability", [](std::string& detail) {
        auto p2 = NFunction::power(2);
        Budget b;
        b.grid_sizes = {16, 32, 64};
        b.restarts = 6;
        b.max_iters = 1200;
        b.seed = 0;
        b.search_tol = 3e-4;
        b.threads = 2;
        auto est = estimate_quotient(QuotientKind::poincare_regional, p2, kUnit, 0.8, b);
        double v16 = est.level_values[0].second;
        double v32 = est.level_values[1].second;
        double v64 = est.level_values[2].second;
        double spread = (std::max({v16, v32, v64}) - std::min({v16, v32, v64})) /
                        std::max({v16, v32, v64});
        bool above = v32 > 1e-3 * v16 && v64 > 1e-3 * v16;
        detail = "P1(16)=" + format_double(v16) + " P1(32)=" + format_double(v32) +
                 " P1(64)=" + format_double(v64) + " spread=" + format_double(spread);
        return spread <= 0.05 && above;
    });

    // ------------------------------------------------------------------
    criterion(8, "scaling sandwich", [](std::string& detail) {
        auto p2 = NFunction::power(2);
        const double s = 0.5;
        double p = growth_exponent(p2).value; // = q = 2
        Budget b;
        b.grid_sizes = {32};
        b.restarts = 6;
        b.max_iters = 900;
        b.threads = 2;
        auto base = estimate_quotient(QuotientKind::poincare_regional, p2, kUnit, s, b);
        bool ok = true;
        std::string vals;
        for (double t : {0.5, 2.0}) {
            Domain tD = Domain::interval(0, t);
            // matched trial family: the same coefficients on the scaled grid
            TrialFamily mapped(tD.intervals(), base.best_trial.cells(), b.basis);
            mapped.set_coefficients(base.best_coefficients, base.best_amplitude);
            double vt = quotient_of(QuotientKind::poincare_regional, p2, tD, s,
                                    mapped.test_function(), 1e-6);
            double lo = t < 1 ? base.value / std::pow(t, s) : base.value / std::pow(t, s * p);
            double hi = t < 1 ? base.value / std::pow(t, s * p) : base.value / std::pow(t, s);
            ok = ok && vt >= lo * 0.98 && vt <= hi * 1.02;
            vals += " P1(" + format_double(t) + "D)=" + format_double(vt) + " in [" +
                    format_double(lo) + "," + format_double(hi) + "]";
        }
        detail = "P1(D)=" + format_double(base.value) + vals;
        return ok;
    });

    // ------------------------------------------------------------------
    criterion(9, "per-trial Lemma 2.5", [](std::string& detail) {
        auto p2 = NFunction::power(2);
        ModularOptions mo;
        mo.tol_rel = 1e-10;
        Rng rng(99);
        int bad = 0;
        for (int i = 0; i < 100; ++i) {
            Spline1D sp(0, 1, 8, Spline1D::Basis::cubic);
            for (auto& c : sp.coef()) c = rng.uniform(0.05, 2.0);
            auto f = TestFunction::from_spline(sp);
            double hardy = modular_hardy(p2, kUnit, 0.5, f, mo).value;
            double la = modular_la(p2, kUnit, f, mo).value;
            if (!(hardy >= la - 1e-9 * std::max(1.0, la))) ++bad;
        }
        detail = std::to_string(bad) + " of 100 trials violated the bound";
        return bad == 0;
    });

    // ------------------------------------------------------------------
    criterion(10, "n-function property suite", [](std::string& detail) {
        Rng rng(1234);
        int bad = 0;
        long checks = 0;
        for (double q : {1.5, 2.0, 3.0}) {
            std::vector<NFunction> gauges{NFunction::power(q), NFunction::power_log_plus(q),
                                          NFunction::power_log_minus(q), NFunction::llogl()};
            for (const auto& nf : gauges) {
                // convexity at 1e-12 relative slack
                for (int i = 0; i < 1000; ++i) {
                    double t1 = rng.log_uniform(1e-12, 1e12);
                    double t2 = rng.log_uniform(1e-12, 1e12);
                    if (t1 > t2) std::swap(t1, t2);
                    double th = rng.uniform(0.01, 0.99);
                    double lhs = nf(th * t1 + (1 - th) * t2);
                    double rhs = th * nf(t1) + (1 - th) * nf(t2);
                    ++checks;
                    if (!(lhs <= rhs * (1 + 1e-12) + 1e-300)) ++bad;
                }
                // strict monotonicity of A and A/t
                for (int i = 0; i < 1000; ++i) {
                    double t1 = rng.log_uniform(1e-10, 1e10);
                    double t2 = t1 * rng.uniform(1.001, 4.0);
                    ++checks;
                    if (!(nf(t2) > nf(t1))) ++bad;
                    ++checks;
                    if (!(nf(t2) / t2 > nf(t1) / t1 * (1 - 1e-12))) ++bad;
                }
                // two-sided dilation bounds with p = growth_exponent
                double p = growth_exponent(nf).value;
                for (int i = 0; i < 1000; ++i) {
                    double t = rng.log_uniform(1e-8, 1e8);
                    double lam = rng.log_uniform(1.0, 1e4);
                    ++checks;
                    if (!(nf(lam * t) <= std::pow(lam, p) * nf(t) * (1 + 1e-9))) ++bad;
                    ++checks;
                    if (!(nf(t / lam) >= std::pow(1.0 / lam, p) * nf(t) * (1 - 1e-9))) ++bad;
                }
                // derivative consistency
                for (int i = 0; i < 100; ++i) {
                    double t = rng.log_uniform(1e-6, 1e6);
                    double h = 1e-6 * t;
                    double fd = (nf(t + h) - nf(t)) / h;
                    ++checks;
                    if (!(std::fabs(fd - nf.slope(t)) <= 1e-4 * std::max(nf.slope(t), 1e-300)))
                        ++bad;
                }
            }
        }
        detail = std::to_string(checks) + " checks, " + std::to_string(bad) + " violations";
        return bad == 0;
    });

    // ------------------------------------------------------------------
    criterion(11, "growing balls collapse", [](std::string& detail) {
        auto p2 = NFunction::power(2);
        const double s = 0.5;
        Budget b;
        b.grid_sizes = {16};
        b.restarts = 4;
        b.max_iters = 600;
        b.threads = 2;
        Domain b1 = Domain::ball({0.0}, 1.0);
        auto e1 = estimate_quotient(QuotientKind::poincare_full, p2, b1, s, b);
        bool ok = true;
        std::string vals = "P2(B1)=" + format_double(e1.value);
        for (double r : {2.0, 4.0, 8.0}) {
            Domain br = Domain::ball({0.0}, r);
            TrialFamily mapped(Domain::interval(-r, r).intervals(), e1.best_trial.cells(),
                               b.basis);
            mapped.set_coefficients(e1.best_coefficients, e1.best_amplitude);
            double vr = quotient_of(QuotientKind::poincare_full, p2, br, s,
                                    mapped.test_function(), 1e-6);
            double bound = 1.1 * std::pow(r, -s);
            ok = ok && vr / e1.value <= bound;
            vals += " ratio(" + format_double(r) + ")=" + format_double(vr / e1.value) +
                    "<=" + format_double(bound);
        }
        detail = vals;
        return ok;
    });

    std::printf("%s: %d criterion(s) failed\n", failures ? "RESULT FAIL" : "RESULT PASS", failures);
    return failures ? 1 : 0;
}
