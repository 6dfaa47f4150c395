#include <doctest.h>

#include <cmath>

#include "orlicz/modular.hpp"
#include "support/oracles.hpp"

using namespace orlicz;

namespace {
const Domain unit = Domain::interval(0, 1);
}

TEST_SUITE("modular") {

TEST_CASE("modular_la") {
    auto p2 = NFunction::power(2);
    auto f = TestFunction::bump_x1mx();
    auto r = modular_la(p2, unit, f);
    CHECK(r.converged);
    // int_0^1 x^2 (1-x)^2 dx = 1/30
    CHECK(r.value == doctest::Approx(1.0 / 30).epsilon(1e-8));

    CHECK(modular_la(p2, unit, TestFunction::zero(1)).value == 0.0);
    CHECK(modular_la(NFunction::llogl(), unit, TestFunction::zero(1)).value == 0.0);

    auto box = Domain::box({0, 0}, {1, 1});
    auto one = TestFunction::one(2, {0, 0}, {1, 1});
    CHECK(modular_la(p2, box, one).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("modular_hardy") {
    auto p2 = NFunction::power(2);
    auto f = TestFunction::bump_x1mx();
    auto r = modular_hardy(p2, unit, 0.5, f);
    // int_0^1 x^2(1-x)^2 / min(x,1-x) dx = 11/96
    CHECK(r.value == doctest::Approx(11.0 / 96).epsilon(1e-6));

    CHECK(modular_hardy(p2, unit, 0.5, TestFunction::zero(1)).value == 0.0);

    // f == 1 with s q >= 1 diverges (the necessity mechanism)
    auto one = TestFunction::one(1, {0}, {1});
    auto d = modular_hardy(p2, unit, 0.5, one);
    CHECK(d.diverged);
    CHECK_FALSE(d.converged);
    CHECK(d.value == kInf);

    // but converges for s q < 1: 2 int_0^{1/2} x^{-0.6} dx = 5 * 2^{-0.4}
    auto c = modular_hardy(p2, unit, 0.3, one);
    CHECK_FALSE(c.diverged);
    CHECK(c.value == doctest::Approx(5.0 * std::pow(2.0, -0.4)).epsilon(1e-5));

    // cutoff probe: at least A(1) on the bulk where delta > eps
    auto fc = TestFunction::cutoff(unit, 0.1);
    auto h = modular_hardy(p2, unit, 0.9, fc);
    CHECK(h.value >= 0.8);
}

TEST_CASE("gagliardo closed form") {
    auto p2 = NFunction::power(2);
    auto fx = TestFunction::identity_1d();
    ModularOptions opt;
    opt.tol_rel = 1e-7;
    for (double s : {0.25, 0.5, 0.75}) {
        double expect = 1.0 / ((1 - s) * (3 - 2 * s));
        auto r = modular_wsa(p2, unit, s, fx, Region::domain_x_domain, opt);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(expect).epsilon(1e-5));
    }
    // constants vanish
    auto one = TestFunction::one(1, {0}, {1});
    CHECK(modular_wsa(p2, unit, 0.5, one, Region::domain_x_domain).value == 0.0);
}

TEST_CASE("oracle cross-check on a non-power gauge") {
    auto ll = NFunction::llogl();
    auto f = TestFunction::bump_x1mx();
    ModularOptions opt;
    opt.tol_rel = 1e-6;
    auto r = modular_wsa(ll, unit, 0.4, f, Region::domain_x_domain, opt);
    double ref = oracle::gagliardo_1d(ll, [&](double x) { return f(x); }, 0, 1, 0.4, f.lip);
    CHECK(r.value == doctest::Approx(ref).epsilon(2e-3));
}

TEST_CASE("symmetry: full-sum debug agrees with ordered pairs") {
    auto p2 = NFunction::power(2);
    Spline1D sp(0, 1, 4, Spline1D::Basis::cubic);
    Rng rng(23);
    for (auto& c : sp.coef()) c = rng.uniform(0.2, 1.0);
    auto f = TestFunction::from_spline(sp);
    ModularOptions tight;
    tight.tol_rel = 1e-12;
    auto fast = wsa_1d(p2, unit.intervals(), 0.5, f, Region::domain_x_domain, tight);
    ModularOptions dbg = tight;
    dbg.full_sum_debug = true;
    auto full = wsa_1d(p2, unit.intervals(), 0.5, f, Region::domain_x_domain, dbg);
    CHECK(std::fabs(fast.value - full.value) <= 1e-10 * std::fabs(fast.value));
}

TEST_CASE("monotonicity in the gauge") {
    // t^2/log(e+t) <= t^2 pointwise forces the same order on every modular
    auto small = NFunction::power_log_minus(2);
    auto big = NFunction::power(2);
    auto f = TestFunction::bump_x1mx();
    CHECK(modular_la(small, unit, f).value < modular_la(big, unit, f).value);
    CHECK(modular_hardy(small, unit, 0.5, f).value < modular_hardy(big, unit, 0.5, f).value);
    CHECK(modular_wsa(small, unit, 0.5, f, Region::domain_x_domain).value <
          modular_wsa(big, unit, 0.5, f, Region::domain_x_domain).value);
}

TEST_CASE("region monotonicity: D x D <= R x R") {
    auto p2 = NFunction::power(2);
    Spline1D sp(0, 1, 8, Spline1D::Basis::cubic);
    for (auto& c : sp.coef()) c = 0.7;
    auto f = TestFunction::from_spline(sp);
    auto dd = modular_wsa(p2, unit, 0.5, f, Region::domain_x_domain);
    auto rr = modular_wsa(p2, unit, 0.5, f, Region::full_space);
    CHECK(rr.value > dd.value);
    CHECK(rr.converged);
}

TEST_CASE("interval unions: cross terms and complement terms") {
    auto p2 = NFunction::power(2);
    Domain two = Domain::interval_union(IntervalUnion({{0, 1}, {1.5, 2.0}}));
    Spline1D sa(0, 1, 8), sb(1.5, 2.0, 8);
    for (auto& c : sa.coef()) c = 0.5;
    for (auto& c : sb.coef()) c = 0.25;
    auto fa = TestFunction::from_spline(sa);
    // manual union test function
    TestFunction f;
    f.dim = 1;
    auto ea = sa, eb = sb;
    f.eval = [ea, eb](const double* x) {
        if (x[0] > 0 && x[0] < 1) return ea(x[0]);
        if (x[0] > 1.5 && x[0] < 2.0) return eb(x[0]);
        return 0.0;
    };
    f.bbox_lo = {0};
    f.bbox_hi = {2};
    f.lip = std::max(sa.profile().lip, sb.profile().lip);
    f.sup_abs = 0.5;
    auto r = modular_wsa(p2, two, 0.5, f, Region::domain_x_domain);
    CHECK(r.converged);
    // the union integral dominates the sum of the component self terms
    auto ra = modular_wsa(p2, Domain::interval(0, 1), 0.5, fa, Region::domain_x_domain);
    CHECK(r.value > ra.value);
}

TEST_CASE("refinement convergence: tightening tolerance stays within the error bar") {
    auto p2 = NFunction::power(2);
    auto f = TestFunction::bump_x1mx();
    ModularOptions loose;
    loose.tol_rel = 1e-4;
    ModularOptions tight;
    tight.tol_rel = 1e-9;
    for (double s : {0.3, 0.6}) {
        auto a = modular_wsa(p2, unit, s, f, Region::domain_x_domain, loose);
        auto b = modular_wsa(p2, unit, s, f, Region::domain_x_domain, tight);
        CHECK(std::fabs(a.value - b.value) <= a.abs_error_estimate + 1e-12);
    }
}

TEST_CASE("polar identity: constants and a quick bump check") {
    auto p2 = NFunction::power(2);
    auto box = Domain::box({0, 0}, {1, 1});
    auto one = TestFunction::one(2, {0, 0}, {1, 1});
    auto [l0, r0] = polar_identity_check(p2, box, 0.5, one, 16);
    CHECK(l0.value == 0.0);
    CHECK(r0.value == 0.0);

    ModularOptions opt;
    opt.tol_rel = 2e-3;
    auto f = TestFunction::tensor_bump_2d();
    auto [lhs, rhs] = polar_identity_check(p2, box, 0.5, f, 64, opt);
    CHECK(lhs.value > 0);
    CHECK(std::fabs(lhs.value - rhs.value) / lhs.value < 2e-2);
}

} // TEST_SUITE
