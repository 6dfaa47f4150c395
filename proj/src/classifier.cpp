#include "orlicz/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "orlicz/variational.hpp"

namespace orlicz {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt_num(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string limit_text(const LimitVerdict& v) {
    std::string s;
    switch (v.classification) {
    case LimitClass::evidence_zero:
        s = "zero";
        break;
    case LimitClass::evidence_positive:
        s = "positive(" + fmt_num(v.value) + ")";
        break;
    case LimitClass::evidence_infinite:
        s = "infinite";
        break;
    case LimitClass::inconclusive:
        s = "inconclusive";
        break;
    }
    return s + (v.analytic ? " [analytic]" : " [probe]");
}

std::string beta_text(const BetaResult& b) {
    std::string s;
    switch (b.classification) {
    case LimitClass::evidence_zero:
        s = "0";
        break;
    case LimitClass::evidence_positive:
        s = fmt_num(b.value);
        break;
    case LimitClass::evidence_infinite:
        s = "inf";
        break;
    case LimitClass::inconclusive:
        s = "inconclusive";
        break;
    }
    return s + (b.analytic ? " [analytic]" : " [probe]");
}

// lazily evaluated hypothesis gauges shared by the rules
struct GaugeCache {
    const NFunction& nf;
    double s;
    int dim;
    const Domain* D;

    std::optional<bool> delta2_;
    bool delta2_analytic = true;
    std::optional<BetaResult> beta_;
    std::vector<std::tuple<LimitDirection, double, LimitVerdict>> alphas_;

    bool delta2() {
        if (!delta2_) {
            if (nf.is_catalog()) {
                delta2_ = true; // every catalog gauge doubles
                delta2_analytic = true;
            } else {
                delta2_ = !doubling_constant(nf).diverged;
                delta2_analytic = false;
            }
        }
        return *delta2_;
    }

    const BetaResult& beta() {
        if (!beta_) beta_ = beta_limit(nf, s);
        return *beta_;
    }

    const LimitVerdict& alpha_lim(LimitDirection dir, double w) {
        for (auto& [d0, w0, v] : alphas_)
            if (d0 == dir && std::fabs(w0 - w) < 1e-15) return v;
        alphas_.emplace_back(dir, w, alpha_limit_evidence(nf, s, dir, w));
        return std::get<2>(alphas_.back());
    }
};

struct Firing {
    Status status;
    std::string rule;
    Grade grade;
    std::vector<EvidenceItem> evidence;
};

void merge(std::vector<Firing>& list, Status st, std::string rule, Grade grade,
           std::vector<EvidenceItem> ev) {
    list.push_back({st, std::move(rule), grade, std::move(ev)});
}

Verdict settle(Inequality ineq, const std::vector<Firing>& fired) {
    Verdict v;
    v.inequality = ineq;
    if (fired.empty()) {
        v.status = Status::unknown;
        return v;
    }
    for (std::size_t i = 1; i < fired.size(); ++i)
        if (fired[i].status != fired[0].status)
            fail(errc::contradiction, "classifier: rules " + fired[0].rule + " and " +
                                          fired[i].rule + " disagree on " + to_string(ineq));
    v.status = fired[0].status;
    v.rule = fired[0].rule;
    v.grade = fired[0].grade;
    v.evidence = fired[0].evidence;
    return v;
}

Grade grade_of(const LimitVerdict& v) { return v.analytic ? Grade::theorem : Grade::evidence; }

} // namespace

std::string to_string(Inequality i) {
    switch (i) {
    case Inequality::fohi:
        return "FOHI";
    case Inequality::rfopi:
        return "RFOPI";
    case Inequality::fopi:
        return "FOPI";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
    case Status::holds:
        return "holds";
    case Status::fails:
        return "fails";
    case Status::unknown:
        return "unknown";
    }
    return "?";
}

std::string to_string(Grade g) { return g == Grade::theorem ? "theorem" : "evidence"; }

std::string to_string(DomainClassTag t) {
    switch (t) {
    case DomainClassTag::bounded_lipschitz:
        return "bounded-lipschitz";
    case DomainClassTag::punctured_space:
        return "punctured-space";
    case DomainClassTag::above_lipschitz_graph:
        return "above-lipschitz-graph";
    case DomainClassTag::complement_bounded_lipschitz:
        return "complement-bounded-lipschitz";
    case DomainClassTag::open_set_with_sections:
        return "open-set-with-sections";
    case DomainClassTag::general_1d:
        return "general-1d";
    }
    return "?";
}

std::optional<DomainClassTag> domain_class_from_string(const std::string& s) {
    for (auto t : {DomainClassTag::bounded_lipschitz, DomainClassTag::punctured_space,
                   DomainClassTag::above_lipschitz_graph,
                   DomainClassTag::complement_bounded_lipschitz,
                   DomainClassTag::open_set_with_sections, DomainClassTag::general_1d})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

std::vector<Verdict> classify(const NFunction& nf, double s, const DomainClass& dc,
                              const Domain* D) {
    if (!(s > 0 && s < 1)) fail(errc::schema, "classify: s must lie in (0,1)");
    const int N = D ? D->dim() : dc.dim;
    GaugeCache g{nf, s, N, D, {}, true, {}, {}};

    std::vector<Firing> fohi, rfopi, fopi;

    auto ev_delta2 = [&]() -> EvidenceItem {
        return {"delta2", std::string(g.delta2() ? "true" : "false") +
                              (g.delta2_analytic ? " [analytic]" : " [probe]")};
    };
    auto ev_alpha = [&](LimitDirection dir, double w) -> EvidenceItem {
        const auto& v = g.alpha_lim(dir, w);
        std::string tag = dir == LimitDirection::to_zero_plus ? "alpha_limit(0+" : "alpha_limit(inf";
        return {tag + ",w=" + fmt_num(w) + ")", limit_text(v)};
    };
    auto alpha_zero = [&](LimitDirection dir, double w) {
        return g.alpha_lim(dir, w).classification == LimitClass::evidence_zero;
    };
    auto alpha_grade = [&](LimitDirection dir, double w) { return grade_of(g.alpha_lim(dir, w)); };
    auto worst = [](Grade a, Grade b) {
        return (a == Grade::evidence || b == Grade::evidence) ? Grade::evidence : Grade::theorem;
    };

    const double w0 = 0.0;
    const double wpt = (1.0 - N) / s; // weight for the point/complement Hardy rules

    // --- finite-ball constant of the concrete domain, when available
    std::optional<double> bc;
    if (D) bc = ball_condition(*D);
    switch (dc.tag) {
    case DomainClassTag::punctured_space:
    case DomainClassTag::above_lipschitz_graph:
    case DomainClassTag::complement_bounded_lipschitz:
        bc = kInf;
        break;
    default:
        break;
    }

    // ---- Theorem 1.2 (bounded Lipschitz): FOHI and RFOPI hold
    if (dc.tag == DomainClassTag::bounded_lipschitz) {
        if (g.delta2() && alpha_zero(LimitDirection::to_zero_plus, w0)) {
            Grade gr = worst(alpha_grade(LimitDirection::to_zero_plus, w0),
                             g.delta2_analytic ? Grade::theorem : Grade::evidence);
            std::vector<EvidenceItem> ev{ev_delta2(), ev_alpha(LimitDirection::to_zero_plus, w0)};
            merge(fohi, Status::holds, "Thm1.2", gr, ev);
            merge(rfopi, Status::holds, "Thm1.2", gr, ev);
        }
        // ---- Theorem 1.3: necessity via beta
        const BetaResult& b = g.beta();
        Grade bg = b.analytic ? Grade::theorem : Grade::evidence;
        if (b.classification == LimitClass::evidence_zero) {
            std::vector<EvidenceItem> ev{{"beta", beta_text(b)}};
            merge(fohi, Status::fails, "Thm1.3(1)", bg, ev);
            merge(rfopi, Status::fails, "Thm1.3(1)", bg, ev);
        } else if (b.classification == LimitClass::evidence_positive && finite(b.value) &&
                   b.value > 0) {
            merge(fohi, Status::fails, "Thm1.3(2)", bg, {{"beta", beta_text(b)}});
        }
        // ---- bounded domains always satisfy the exterior-measure condition
        merge(fopi, Status::holds, "Thm1.10(2)", Grade::theorem,
              {{"exterior_measure", "bounded domain: B(x,R) covers D^c mass for R > diam(D)"}});
    }

    // ---- Theorem 1.4 (punctured space)
    if (dc.tag == DomainClassTag::punctured_space) {
        bool h = alpha_zero(LimitDirection::to_zero_plus, wpt) ||
                 alpha_zero(LimitDirection::to_infinity, wpt);
        if (g.delta2() && h) {
            Grade gr = worst(alpha_grade(LimitDirection::to_zero_plus, wpt),
                             alpha_grade(LimitDirection::to_infinity, wpt));
            merge(fohi, Status::holds, "Thm1.4", gr,
                  {ev_delta2(), ev_alpha(LimitDirection::to_zero_plus, wpt),
                   ev_alpha(LimitDirection::to_infinity, wpt)});
        }
    }

    // ---- Theorem 1.5(1) (above a Lipschitz graph)
    if (dc.tag == DomainClassTag::above_lipschitz_graph) {
        bool h = alpha_zero(LimitDirection::to_zero_plus, w0) ||
                 alpha_zero(LimitDirection::to_infinity, w0);
        if (g.delta2() && h) {
            Grade gr = worst(alpha_grade(LimitDirection::to_zero_plus, w0),
                             alpha_grade(LimitDirection::to_infinity, w0));
            merge(fohi, Status::holds, "Thm1.5(1)", gr,
                  {ev_delta2(), ev_alpha(LimitDirection::to_zero_plus, w0),
                   ev_alpha(LimitDirection::to_infinity, w0)});
        }
    }

    // ---- Theorem 1.5(2) (complement of a bounded Lipschitz domain)
    if (dc.tag == DomainClassTag::complement_bounded_lipschitz) {
        bool c1 = alpha_zero(LimitDirection::to_infinity, wpt) &&
                  alpha_zero(LimitDirection::to_zero_plus, w0);
        bool c2 = alpha_zero(LimitDirection::to_zero_plus, wpt);
        bool c3 = alpha_zero(LimitDirection::to_infinity, w0);
        if (g.delta2() && (c1 || c2 || c3)) {
            Grade gr = Grade::theorem;
            for (auto [d, w] : {std::pair{LimitDirection::to_infinity, wpt},
                                {LimitDirection::to_zero_plus, w0},
                                {LimitDirection::to_zero_plus, wpt},
                                {LimitDirection::to_infinity, w0}})
                gr = worst(gr, alpha_grade(d, w));
            merge(fohi, Status::holds, "Thm1.5(2)", gr,
                  {ev_delta2(), ev_alpha(LimitDirection::to_infinity, wpt),
                   ev_alpha(LimitDirection::to_zero_plus, w0),
                   ev_alpha(LimitDirection::to_zero_plus, wpt),
                   ev_alpha(LimitDirection::to_infinity, w0)});
        }
    }

    // ---- Proposition 2.6(4): BC = inf kills both Poincare inequalities
    if (bc && *bc == kInf) {
        std::vector<EvidenceItem> ev{{"BC", "inf"}};
        merge(rfopi, Status::fails, "Prop2.6(4)", Grade::theorem, ev);
        merge(fopi, Status::fails, "Prop2.6(4)", Grade::theorem, ev);
    }

    // ---- Proposition 5.1 (1-D characterization given the alpha limit)
    if (dc.tag == DomainClassTag::general_1d && bc) {
        if (alpha_zero(LimitDirection::to_zero_plus, w0)) {
            Grade gr = alpha_grade(LimitDirection::to_zero_plus, w0);
            std::vector<EvidenceItem> ev{{"BC", fmt_num(*bc)},
                                         ev_alpha(LimitDirection::to_zero_plus, w0)};
            merge(rfopi, finite(*bc) ? Status::holds : Status::fails, "Prop5.1", gr, ev);
        }
    }

    // ---- Theorem 1.10(1) (sections with uniformly bounded BC)
    if (dc.tag == DomainClassTag::open_set_with_sections && D) {
        std::optional<double> sup_bc_sections;
        if (D->shape() == Domain::Shape::strip_union) {
            // sections along omega_theta, theta in (0, pi/4): sec(theta) I
            sup_bc_sections = D->intervals().max_half_length() * std::sqrt(2.0);
        } else if (D->bounded()) {
            sup_bc_sections = D->diameter() / 2.0;
        }
        if (sup_bc_sections && finite(*sup_bc_sections) && g.delta2() &&
            alpha_zero(LimitDirection::to_zero_plus, w0)) {
            Grade gr = worst(alpha_grade(LimitDirection::to_zero_plus, w0),
                             g.delta2_analytic ? Grade::theorem : Grade::evidence);
            merge(rfopi, Status::holds, "Thm1.10(1)", gr,
                  {ev_delta2(), ev_alpha(LimitDirection::to_zero_plus, w0),
                   {"sup_BC_sections", fmt_num(*sup_bc_sections)}});
        }
        // ---- Theorem 1.10(2): exterior measure evidence
        if (!(bc && *bc == kInf)) {
            MeasureEstimate me = exterior_measure_lb(*D, 1.0, 200000, 0);
            if (me.lower_bound > 3 * me.std_error && me.lower_bound > 0) {
                merge(fopi, Status::holds, "Thm1.10(2)", Grade::evidence,
                      {{"exterior_measure_lb(R=1)",
                        fmt_num(me.lower_bound) + " +- " + fmt_num(me.std_error)}});
            }
        }
    }

    // ---- P2 >= P1: RFOPI holds forces FOPI holds
    {
        std::vector<Firing> rf = rfopi;
        for (const auto& f : rf)
            if (f.status == Status::holds)
                merge(fopi, Status::holds, "P2>=P1 via " + f.rule, f.grade, f.evidence);
    }

    std::vector<Verdict> out;
    out.push_back(settle(Inequality::fohi, fohi));
    out.push_back(settle(Inequality::rfopi, rfopi));
    out.push_back(settle(Inequality::fopi, fopi));

    // sanity: never RFOPI holds with FOPI fails
    if (out[1].status == Status::holds && out[2].status == Status::fails)
        fail(errc::contradiction, "classifier: RFOPI holds with FOPI fails");
    return out;
}

Table1Report table1(const std::vector<double>& s_grid, double q) {
    if (!(q > 1)) fail(errc::schema, "table1: q must exceed 1");
    Table1Report rep;
    rep.q = q;
    const DomainClass dc{DomainClassTag::bounded_lipschitz, 1};
    std::vector<std::pair<std::string, NFunction>> gauges{
        {"t^q", NFunction::power(q)},
        {"t^q(1+|log t|)", NFunction::power_log_plus(q)},
        {"t^q/log(e+t)", NFunction::power_log_minus(q)},
        {"(1+t)log(1+t)-t", NFunction::llogl()},
    };
    for (auto& [name, nf] : gauges) {
        Table1Row row;
        row.gauge = name;
        for (double s : s_grid) {
            auto verdicts = classify(nf, s, dc);
            Table1Cell cell;
            cell.s = s;
            cell.fohi = verdicts[0].status;
            cell.rfopi = verdicts[1].status;
            cell.fohi_rule = verdicts[0].rule;
            cell.rfopi_rule = verdicts[1].rule;
            row.cells.push_back(cell);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

LsCheckResult ls_check(const NFunction& nf, double s, const Domain& D) {
    LsCheckResult out;
    // uniformity evidence only needs coarse upper bounds per section
    Budget small;
    small.grid_sizes = {8};
    small.restarts = 2;
    small.max_iters = 60;
    small.amplitude_points = 7;
    small.search_tol = 3e-3;
    small.final_tol = 1e-4;

    auto section_p2 = [&](const IntervalUnion& sec) -> double {
        Domain sd = Domain::interval_union(sec);
        QuotientEstimate est = estimate_quotient(QuotientKind::poincare_full, nf, sd, s, small);
        return est.value;
    };

    switch (D.shape()) {
    case Domain::Shape::punctured_space:
        return out; // BC = inf; sections are punctured lines
    case Domain::Shape::strip_union: {
        const int n_theta = 16;
        double minv = kInf;
        for (int i = 0; i < n_theta; ++i) {
            double theta = (i + 0.5) * (kPi / 4) / n_theta;
            double sec = 1.0 / std::cos(theta);
            IntervalUnion section = D.intervals().affine(0.0, sec);
            minv = std::min(minv, section_p2(section));
            ++out.sections_tested;
        }
        out.min_section_p2 = minv;
        out.is_ls_evidence = minv > 0;
        return out;
    }
    case Domain::Shape::box: {
        const int n_theta = 8;
        double minv = kInf;
        for (int i = 0; i < n_theta; ++i) {
            double theta = (i + 0.5) * (kPi / 4) / n_theta;
            Point omega{std::cos(theta), std::sin(theta)};
            Point perp{-omega[1], omega[0]};
            // a base through the box center
            double cx = 0.5 * (D.box_lo()[0] + D.box_hi()[0]);
            double cy = 0.5 * (D.box_lo()[1] + D.box_hi()[1]);
            double tau = cx * perp[0] + cy * perp[1];
            LineSection ls = line_section(D, {tau * perp[0], tau * perp[1]}, omega);
            if (ls.section.empty()) continue;
            minv = std::min(minv, section_p2(ls.section));
            ++out.sections_tested;
        }
        out.min_section_p2 = finite(minv) ? minv : 0;
        out.is_ls_evidence = out.sections_tested > 0 && minv > 0;
        return out;
    }
    default:
        fail(errc::schema, "ls_check: shape without closed-form sections");
    }
}

} // namespace orlicz
