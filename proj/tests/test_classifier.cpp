#include <doctest.h>

#include <cmath>

#include "orlicz/classifier.hpp"

using namespace orlicz;

namespace {

const DomainClass kBL{DomainClassTag::bounded_lipschitz, 1};

Status status_of(const std::vector<Verdict>& vs, Inequality i) {
    for (const auto& v : vs)
        if (v.inequality == i) return v.status;
    return Status::unknown;
}

std::string rule_of(const std::vector<Verdict>& vs, Inequality i) {
    for (const auto& v : vs)
        if (v.inequality == i) return v.rule;
    return "";
}

// expected Table 1 behaviour, with the gap conventions spelled out
Status expect_fohi(int row, double s, double q) {
    double b = 1.0 / q;
    switch (row) {
    case 0: // t^q
        return s > b ? Status::holds : Status::fails;
    case 1: // t^q (1 + |log t|): silent at s = 1/q
        return s > b ? Status::holds : (s < b ? Status::fails : Status::unknown);
    case 2: // t^q / log(e+t): fails up to and including 1/q
        return s > b ? Status::holds : Status::fails;
    default: // llogl
        return Status::fails;
    }
}

Status expect_rfopi(int row, double s, double q) {
    double b = 1.0 / q;
    switch (row) {
    case 0: // t^q: open gap at s = 1/q
        return s > b ? Status::holds : (s < b ? Status::fails : Status::unknown);
    case 1:
        return s > b ? Status::holds : (s < b ? Status::fails : Status::unknown);
    case 2:
        return s > b ? Status::holds : Status::fails;
    default:
        return Status::fails;
    }
}

} // namespace

TEST_SUITE("classifier") {

TEST_CASE("bounded Lipschitz catalog verdicts") {
    auto p2 = NFunction::power(2);
    auto v1 = classify(p2, 0.8, kBL);
    CHECK(status_of(v1, Inequality::fohi) == Status::holds);
    CHECK(rule_of(v1, Inequality::fohi) == "Thm1.2");
    CHECK(status_of(v1, Inequality::rfopi) == Status::holds);
    CHECK(status_of(v1, Inequality::fopi) == Status::holds);

    auto v2 = classify(p2, 0.5, kBL);
    CHECK(status_of(v2, Inequality::fohi) == Status::fails);
    CHECK(rule_of(v2, Inequality::fohi) == "Thm1.3(2)");
    CHECK(status_of(v2, Inequality::rfopi) == Status::unknown);

    auto v3 = classify(p2, 0.3, kBL);
    CHECK(status_of(v3, Inequality::fohi) == Status::fails);
    CHECK(rule_of(v3, Inequality::fohi) == "Thm1.3(1)");
    CHECK(status_of(v3, Inequality::rfopi) == Status::fails);

    auto v4 = classify(NFunction::llogl(), 0.5, kBL);
    CHECK(status_of(v4, Inequality::fohi) == Status::fails);
    CHECK(rule_of(v4, Inequality::fohi) == "Thm1.3(1)");
    CHECK(status_of(v4, Inequality::rfopi) == Status::fails);
    CHECK(status_of(v4, Inequality::fopi) == Status::holds); // bounded domain

    // row 3 includes the boundary s = 1/q in both failure columns
    auto v5 = classify(NFunction::power_log_minus(2), 0.5, kBL);
    CHECK(status_of(v5, Inequality::fohi) == Status::fails);
    CHECK(status_of(v5, Inequality::rfopi) == Status::fails);

    // row 2 stays silent at s = 1/q
    auto v6 = classify(NFunction::power_log_plus(2), 0.5, kBL);
    CHECK(status_of(v6, Inequality::fohi) == Status::unknown);
    CHECK(status_of(v6, Inequality::rfopi) == Status::unknown);
}

TEST_CASE("table1 golden across q") {
    for (double q : {1.5, 2.0, 3.0}) {
        std::vector<double> grid;
        for (int i = 1; i <= 19; ++i) grid.push_back(i * 0.05);
        grid.push_back(1.0 / q); // exact boundary
        Table1Report rep = table1(grid, q);
        REQUIRE(rep.rows.size() == 4);
        for (int row = 0; row < 4; ++row) {
            for (const auto& cell : rep.rows[row].cells) {
                CAPTURE(q);
                CAPTURE(row);
                CAPTURE(cell.s);
                REQUIRE(cell.fohi == expect_fohi(row, cell.s, q));
                REQUIRE(cell.rfopi == expect_rfopi(row, cell.s, q));
            }
        }
    }
}

TEST_CASE("point Hardy (punctured space)") {
    auto p2 = NFunction::power(2);
    DomainClass pc{DomainClassTag::punctured_space, 1};
    // N = 1: weight 0; alpha limit zero on one side whenever s != 1/2
    CHECK(status_of(classify(p2, 0.8, pc), Inequality::fohi) == Status::holds);
    CHECK(status_of(classify(p2, 0.3, pc), Inequality::fohi) == Status::holds);
    CHECK(status_of(classify(p2, 0.5, pc), Inequality::fohi) == Status::unknown);
    // Poincare inequalities collapse: BC = inf
    auto vs = classify(p2, 0.8, pc);
    CHECK(status_of(vs, Inequality::rfopi) == Status::fails);
    CHECK(rule_of(vs, Inequality::rfopi) == "Prop2.6(4)");
    CHECK(status_of(vs, Inequality::fopi) == Status::fails);

    // N = 2 weights the limits: lambda^{-1/s} alpha(lambda) -> 0 as lambda -> inf
    DomainClass pc2{DomainClassTag::punctured_space, 2};
    CHECK(status_of(classify(p2, 0.8, pc2), Inequality::fohi) == Status::holds);
}

TEST_CASE("half space above a graph and complements") {
    auto p2 = NFunction::power(2);
    DomainClass ag{DomainClassTag::above_lipschitz_graph, 2};
    CHECK(status_of(classify(p2, 0.8, ag), Inequality::fohi) == Status::holds);
    CHECK(status_of(classify(p2, 0.3, ag), Inequality::fohi) == Status::holds);
    CHECK(status_of(classify(p2, 0.5, ag), Inequality::fohi) == Status::unknown);
    CHECK(status_of(classify(p2, 0.8, ag), Inequality::rfopi) == Status::fails);

    DomainClass cb{DomainClassTag::complement_bounded_lipschitz, 2};
    CHECK(status_of(classify(p2, 0.8, cb), Inequality::fohi) == Status::holds);
    CHECK(status_of(classify(p2, 0.8, cb), Inequality::fopi) == Status::fails);
}

TEST_CASE("1-D characterization via the finite-ball constant") {
    auto p2 = NFunction::power(2);
    DomainClass g1{DomainClassTag::general_1d, 1};
    Domain finite_bc = Domain::interval_union(IntervalUnion({{0, 1}, {2, 3}}));
    auto v1 = classify(p2, 0.8, g1, &finite_bc);
    CHECK(status_of(v1, Inequality::rfopi) == Status::holds);
    CHECK(rule_of(v1, Inequality::rfopi) == "Prop5.1");
    CHECK(status_of(v1, Inequality::fopi) == Status::holds);

    Domain infinite_bc = Domain::interval_union(IntervalUnion({{0.0, kInf}}));
    auto v2 = classify(p2, 0.8, g1, &infinite_bc);
    CHECK(status_of(v2, Inequality::rfopi) == Status::fails);
    CHECK(status_of(v2, Inequality::fopi) == Status::fails);

    // without the alpha hypothesis Prop 5.1 stays silent on the holds side
    auto v3 = classify(p2, 0.3, g1, &finite_bc);
    CHECK(status_of(v3, Inequality::rfopi) == Status::unknown);
}

TEST_CASE("open sets with sections") {
    auto p2 = NFunction::power(2);
    DomainClass os{DomainClassTag::open_set_with_sections, 2};
    Domain strips = Domain::strip_union(IntervalUnion({{0, 1}, {2, 3}}));
    auto v = classify(p2, 0.8, os, &strips);
    CHECK(status_of(v, Inequality::rfopi) == Status::holds);
    CHECK(rule_of(v, Inequality::rfopi) == "Thm1.10(1)");
    CHECK(status_of(v, Inequality::fopi) == Status::holds);

    Domain holes = Domain::lattice_holes(0.1);
    auto vh = classify(p2, 0.5, os, &holes);
    CHECK(status_of(vh, Inequality::fopi) == Status::holds);
    CHECK(rule_of(vh, Inequality::fopi) == "Thm1.10(2)");
    CHECK(status_of(vh, Inequality::rfopi) == Status::unknown);
}

TEST_CASE("rule soundness and consistency across a grid") {
    std::vector<NFunction> gauges{NFunction::power(1.5), NFunction::power(2),
                                  NFunction::power_log_plus(2), NFunction::power_log_minus(2),
                                  NFunction::llogl()};
    std::vector<DomainClass> classes{{DomainClassTag::bounded_lipschitz, 1},
                                     {DomainClassTag::punctured_space, 1},
                                     {DomainClassTag::punctured_space, 2},
                                     {DomainClassTag::above_lipschitz_graph, 2},
                                     {DomainClassTag::complement_bounded_lipschitz, 2}};
    for (const auto& nf : gauges)
        for (const auto& dc : classes)
            for (double s : {0.2, 0.45, 0.5, 0.65, 0.9}) {
                auto vs = classify(nf, s, dc); // must not throw a contradiction
                Status rf = status_of(vs, Inequality::rfopi);
                Status fp = status_of(vs, Inequality::fopi);
                REQUIRE_FALSE((rf == Status::holds && fp == Status::fails));
                for (const auto& v : vs) {
                    if (v.status != Status::unknown) {
                        REQUIRE_FALSE(v.rule.empty());
                        REQUIRE_FALSE(v.evidence.empty());
                    }
                }
            }
}

TEST_CASE("ls_check evidence") {
    auto p2 = NFunction::power(2);
    Domain strips = Domain::strip_union(IntervalUnion::single(0, 1));
    auto r = ls_check(p2, 0.8, strips);
    CHECK(r.is_ls_evidence);
    CHECK(r.sections_tested == 16);
    CHECK(r.min_section_p2 > 0);

    Domain box = Domain::box({0, 0}, {1, 1});
    auto rb = ls_check(p2, 0.8, box);
    CHECK(rb.is_ls_evidence);
    CHECK(rb.min_section_p2 > 0);

    auto rp = ls_check(p2, 0.8, Domain::punctured_space({0.0, 0.0}));
    CHECK_FALSE(rp.is_ls_evidence);
}

} // TEST_SUITE
