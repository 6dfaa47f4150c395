#include <doctest.h>

#include <cmath>

#include "orlicz/variational.hpp"

using namespace orlicz;

namespace {
const Domain unit = Domain::interval(0, 1);

Budget small_budget() {
    Budget b;
    b.grid_sizes = {8};
    b.restarts = 3;
    b.max_iters = 250;
    b.amplitude_points = 7;
    b.search_tol = 1e-3;
    b.final_tol = 1e-6;
    return b;
}
} // namespace

TEST_SUITE("variational") {

TEST_CASE("spline families reproduce themselves under refinement") {
    for (auto basis : {Spline1D::Basis::linear, Spline1D::Basis::cubic}) {
        Spline1D s(0, 1, 8, basis);
        Rng rng(3);
        for (auto& c : s.coef()) c = rng.uniform(-1, 1);
        Spline1D fine = s.refined();
        for (int i = 0; i <= 200; ++i) {
            double x = i / 200.0;
            REQUIRE(fine(x) == doctest::Approx(s(x)).epsilon(1e-12));
        }
        // zero boundary
        CHECK(s(0.0) == 0.0);
        CHECK(s(1.0) == 0.0);
    }
}

TEST_CASE("P1 estimate at s = 0.8 is positive and self-consistent") {
    auto p2 = NFunction::power(2);
    Budget b = small_budget();
    auto est = estimate_quotient(QuotientKind::poincare_regional, p2, unit, 0.8, b);
    CHECK(est.value > 0.05);
    CHECK(est.value < 50.0);
    // invariant: the reported value is the independently recomputed ratio
    ModularOptions mo;
    mo.tol_rel = 1e-8;
    auto f = est.best_trial.test_function();
    double num = modular_wsa(p2, unit, 0.8, f, Region::domain_x_domain, mo).value;
    double den = modular_la(p2, unit, f, mo).value;
    CHECK(est.value == doctest::Approx(num / den).epsilon(1e-6));
    // history is non-increasing in value
    for (std::size_t i = 1; i < est.history.size(); ++i)
        CHECK(est.history[i].second <= est.history[i - 1].second + 1e-12);
}

TEST_CASE("warm-started refinement never increases the estimate") {
    auto p2 = NFunction::power(2);
    Budget coarse = small_budget();
    coarse.grid_sizes = {8};
    auto e8 = estimate_quotient(QuotientKind::poincare_regional, p2, unit, 0.5, coarse);
    Budget both = small_budget();
    both.grid_sizes = {8, 16};
    auto e16 = estimate_quotient(QuotientKind::poincare_regional, p2, unit, 0.5, both);
    CHECK(e16.value <= e8.value + 1e-9);
    CHECK(e16.refinement_level == 1);
}

TEST_CASE("P2 dominates P1") {
    auto p2 = NFunction::power(2);
    Budget b = small_budget();
    auto p1 = estimate_quotient(QuotientKind::poincare_regional, p2, unit, 0.5, b);
    auto pf = estimate_quotient(QuotientKind::poincare_full, p2, unit, 0.5, b);
    // per-trial numerator dominance carries to the family minima
    CHECK(pf.value >= p1.value * (1 - 1e-9));
    // and pointwise for the P2-optimal trial
    auto f = pf.best_trial.test_function();
    ModularOptions mo;
    mo.tol_rel = 1e-7;
    double n1 = modular_wsa(p2, unit, 0.5, f, Region::domain_x_domain, mo).value;
    double n2 = modular_wsa(p2, unit, 0.5, f, Region::full_space, mo).value;
    CHECK(n2 >= n1);
}

TEST_CASE("amplitude search engages for non-homogeneous gauges") {
    auto ll = NFunction::llogl();
    Budget b = small_budget();
    b.restarts = 2;
    b.max_iters = 80;
    b.amplitude_points = 5;
    auto est = estimate_quotient(QuotientKind::poincare_regional, ll, unit, 0.8, b);
    CHECK(est.value > 0);
    CHECK(est.best_amplitude > 0);
    // scaling the best trial away from its amplitude does not improve the ratio
    double v0 = est.value;
    for (double scale : {0.25, 4.0}) {
        TrialFamily t = est.best_trial;
        std::vector<double> c = est.best_coefficients;
        t.set_coefficients(c, est.best_amplitude * scale);
        double v = quotient_of(QuotientKind::poincare_regional, ll, unit, 0.8,
                               t.test_function(), 1e-6);
        CHECK(v >= v0 * (1 - 5e-3));
    }
}

TEST_CASE("degenerate trials are flagged") {
    Spline1D s(0, 1, 8);
    auto f = TestFunction::from_spline(s); // all-zero coefficients
    bool dz = false;
    double v = quotient_of(QuotientKind::poincare_regional, NFunction::power(2), unit, 0.5, f,
                           1e-6, &dz);
    CHECK(dz);
    CHECK(v == kInf);
}

TEST_CASE("cutoff construction guards") {
    CHECK_THROWS_AS(TestFunction::cutoff(unit, 0.6), error); // eps above the inradius
    auto f = TestFunction::cutoff(unit, 0.2);
    CHECK(f(0.5) == doctest::Approx(1.0));    // delta = 0.5 >= eps
    CHECK(f(0.05) == 0.0);                    // delta < eps/2
    CHECK(f(0.15) > 0);
    CHECK(f(0.15) < 1);
}

TEST_CASE("cutoff sweep exhibits the failure mechanism at s = 0.3") {
    auto p2 = NFunction::power(2);
    CutoffFamily fam;
    for (int k = 2; k <= 6; ++k) fam.eps_list.push_back(std::ldexp(1.0, -k));
    auto rows = cutoff_sweep(p2, unit, 0.3, fam, 1e-5);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].poincare_quotient < rows[i - 1].poincare_quotient);
        CHECK(rows[i].hardy_quotient < rows[i - 1].hardy_quotient);
    }
    // frozen reference values (dense independent quadrature, rel ~1e-3)
    CHECK(rows[0].poincare_quotient == doctest::Approx(5.8955).epsilon(3e-3));
    CHECK(rows[0].hardy_quotient == doctest::Approx(3.0440).epsilon(3e-3));
    CHECK(rows[2].poincare_quotient == doctest::Approx(2.8030).epsilon(3e-3));
}

TEST_CASE("sweep rejects bad input") {
    CutoffFamily inc;
    inc.eps_list = {0.1, 0.2};
    CHECK_THROWS_AS(cutoff_sweep(NFunction::power(2), unit, 0.3, inc), error);
    CutoffFamily fam;
    fam.eps_list = {0.25};
    CHECK_THROWS_AS(
        cutoff_sweep(NFunction::power(2), Domain::punctured_space({0.0}), 0.3, fam), error);
}

} // TEST_SUITE
