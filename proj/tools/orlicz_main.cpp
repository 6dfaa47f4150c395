// Command-line front end: classify / gauges / estimate / table1.
// All reports embed the resolved problem spec and the library version; output
// is deterministic for a fixed spec and seed.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "orlicz/problem_io.hpp"

using namespace orlicz;

namespace {

int exit_code_for(errc c) {
    switch (c) {
    case errc::schema:
        return 2;
    case errc::contradiction:
        return 3;
    case errc::invalid_nfunction:
        return 4;
    case errc::degenerate_trial:
        return 5;
    default:
        return 1;
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) fail(errc::schema, "cannot open output file " + out_path);
        out << text;
    }
}

json report_shell(const std::string& command, json spec) {
    return json{{"tool", "orlicz"}, {"version", kVersion}, {"command", command},
                {"spec", std::move(spec)}};
}

std::vector<double> parse_grid(const std::string& token) {
    // lo:hi:n inclusive grid
    auto c1 = token.find(':');
    auto c2 = token.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        fail(errc::schema, "grid token must be lo:hi:n");
    double lo = std::stod(token.substr(0, c1));
    double hi = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
    int n = std::stoi(token.substr(c2 + 1));
    if (n < 1) fail(errc::schema, "grid token: n >= 1");
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(n == 1 ? lo : lo + (hi - lo) * double(i) / (n - 1));
    return out;
}

std::string csv_escape(const std::string& s) { return s; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orlicz: numerical laboratory for fractional Orlicz-Sobolev inequalities"};
    app.require_subcommand(1);

    // ---- classify ------------------------------------------------------
    auto* cmd_classify = app.add_subcommand("classify", "theorem verdicts for (A, s, domain)");
    std::string cl_nf, cl_class = "bounded-lipschitz", cl_domain, cl_format = "json", cl_out;
    double cl_s = 0.5;
    int cl_dim = 1;
    cmd_classify->add_option("--nfunction", cl_nf, "gauge token or spec file")->required();
    cmd_classify->add_option("--s", cl_s, "fractional order in (0,1)")->required();
    cmd_classify->add_option("--domain-class", cl_class, "bounded-lipschitz|punctured-space|...");
    cmd_classify->add_option("--domain", cl_domain, "optional concrete domain token/file");
    cmd_classify->add_option("--dim", cl_dim, "ambient dimension when no domain is given");
    cmd_classify->add_option("--format", cl_format, "json|csv");
    cmd_classify->add_option("--out", cl_out, "output path (default stdout)");

    // ---- gauges ---------------------------------------------------------
    auto* cmd_gauges = app.add_subcommand("gauges", "scalar gauges of an N-function");
    std::string ga_nf, ga_alpha_grid, ga_alpha_limit, ga_domain, ga_format = "json", ga_out;
    double ga_s = 0.5, ga_weight = 0.0;
    bool ga_beta = false, ga_doubling = false, ga_p = false, ga_bc = false;
    cmd_gauges->add_option("--nfunction", ga_nf)->required();
    cmd_gauges->add_option("--s", ga_s, "fractional order (alpha/beta gauges)");
    cmd_gauges->add_option("--alpha-grid", ga_alpha_grid, "lambda grid lo:hi:n for alpha sweep");
    cmd_gauges->add_flag("--beta", ga_beta, "report the beta limit");
    cmd_gauges->add_flag("--doubling", ga_doubling, "report the doubling constant");
    cmd_gauges->add_flag("--p", ga_p, "report the growth exponent");
    cmd_gauges->add_option("--alpha-limit", ga_alpha_limit, "to-zero|to-infinity");
    cmd_gauges->add_option("--weight", ga_weight, "weight exponent w for the alpha limit");
    cmd_gauges->add_option("--ball-condition", ga_domain, "domain token: report BC(D)");
    ga_bc = false;
    cmd_gauges->add_option("--format", ga_format, "json|csv");
    cmd_gauges->add_option("--out", ga_out, "output path");

    // ---- estimate -------------------------------------------------------
    auto* cmd_est = app.add_subcommand("estimate", "variational quotient estimates and sweeps");
    std::string es_kind = "p1", es_nf, es_domain = "interval:0,1", es_sweep, es_check;
    std::string es_grids = "16", es_format = "json", es_out, es_history, es_basis = "cubic";
    double es_s = 0.5;
    int es_restarts = 8, es_max_iters = 2000, es_amp = 31, es_threads = 1, es_nangles = 256;
    int es_kmin = 2, es_kmax = 8;
    std::uint64_t es_seed = 0;
    cmd_est->add_option("--kind", es_kind, "h|p1|p2");
    cmd_est->add_option("--nfunction", es_nf)->required();
    cmd_est->add_option("--s", es_s)->required();
    cmd_est->add_option("--domain", es_domain, "domain token/file");
    cmd_est->add_option("--grid", es_grids, "comma list of spline grids, e.g. 16,32,64");
    cmd_est->add_option("--restarts", es_restarts);
    cmd_est->add_option("--max-iters", es_max_iters);
    cmd_est->add_option("--amplitude-grid", es_amp);
    cmd_est->add_option("--seed", es_seed);
    cmd_est->add_option("--threads", es_threads, "parallel restarts (results thread-count independent)");
    cmd_est->add_option("--basis", es_basis, "cubic|linear trial basis");
    cmd_est->add_option("--sweep", es_sweep, "cutoff: boundary-layer sweep");
    cmd_est->add_option("--eps-kmin", es_kmin, "cutoff sweep: first k of eps=2^-k");
    cmd_est->add_option("--eps-kmax", es_kmax, "cutoff sweep: last k of eps=2^-k");
    cmd_est->add_option("--check", es_check, "polar: change-of-variables identity check");
    cmd_est->add_option("--n-angles", es_nangles, "angular resolution for --check polar");
    cmd_est->add_option("--history", es_history, "CSV path for the optimizer history");
    cmd_est->add_option("--format", es_format, "json|csv");
    cmd_est->add_option("--out", es_out, "output path");

    // ---- table1 ---------------------------------------------------------
    auto* cmd_t1 = app.add_subcommand("table1", "verdict table for the four catalog gauges");
    std::string t1_grid = "0.1:0.9:9", t1_format = "csv", t1_out;
    double t1_q = 2.0;
    cmd_t1->add_option("--q", t1_q, "power parameter q > 1");
    cmd_t1->add_option("--s-grid", t1_grid, "s grid lo:hi:n");
    cmd_t1->add_option("--format", t1_format, "json|csv");
    cmd_t1->add_option("--out", t1_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_classify) {
            NFunction nf = parse_nfunction_token(cl_nf);
            auto tag = domain_class_from_string(cl_class);
            if (!tag) fail(errc::schema, "unknown domain class '" + cl_class + "'");
            std::optional<Domain> D;
            if (!cl_domain.empty()) D = parse_domain_token(cl_domain);
            DomainClass dc{*tag, D ? D->dim() : cl_dim};
            auto verdicts = classify(nf, cl_s, dc, D ? &*D : nullptr);
            json spec{{"nfunction", nfunction_to_json(nf)},
                      {"s", cl_s},
                      {"domain_class", to_string(*tag)},
                      {"dim", dc.dim}};
            if (D) spec["domain"] = domain_to_json(*D);
            json rep = report_shell("classify", spec);
            rep["verdicts"] = verdicts_to_json(verdicts);
            if (cl_format == "csv") {
                std::string csv = "inequality,status,rule,grade\n";
                for (const auto& v : verdicts)
                    csv += to_string(v.inequality) + "," + to_string(v.status) + "," +
                           (v.rule.empty() ? "-" : v.rule) + "," + to_string(v.grade) + "\n";
                emit(csv, cl_out);
            } else {
                emit(rep.dump(2), cl_out);
            }
            return 0;
        }

        if (*cmd_gauges) {
            NFunction nf = parse_nfunction_token(ga_nf);
            json spec{{"nfunction", nfunction_to_json(nf)}, {"s", ga_s}};
            json rep = report_shell("gauges", spec);
            json results;
            std::string csv;
            if (!ga_alpha_grid.empty()) {
                json rows = json::array();
                csv += "lambda,alpha\n";
                for (double lam : parse_grid(ga_alpha_grid)) {
                    SupResult a = alpha(nf, ga_s, lam);
                    rows.push_back({{"lambda", lam}, {"alpha", a.diverged ? kInf : a.value},
                                    {"argmax_t", a.arg}});
                    csv += format_double(lam) + "," +
                           (a.diverged ? "inf" : format_double(a.value)) + "\n";
                }
                results["alpha_sweep"] = rows;
            }
            if (ga_beta) {
                BetaResult b = beta_limit(nf, ga_s);
                json probes = json::array();
                for (auto& [e, v] : b.probes) probes.push_back({e, v});
                const char* cls = b.classification == LimitClass::evidence_zero ? "zero"
                                  : b.classification == LimitClass::evidence_positive ? "positive"
                                  : b.classification == LimitClass::evidence_infinite ? "infinite"
                                                                                      : "inconclusive";
                results["beta"] = {{"classification", cls},
                                   {"value", b.classification == LimitClass::evidence_infinite
                                                 ? "inf"
                                                 : format_double(b.value)},
                                   {"g_final", b.g_final},
                                   {"analytic", b.analytic},
                                   {"probes", probes}};
                csv += "beta," + std::string(b.classification == LimitClass::evidence_infinite
                                                 ? "inf"
                                                 : format_double(b.value)) + "\n";
            }
            if (ga_doubling) {
                SupResult c2 = doubling_constant(nf);
                results["doubling_constant"] = c2.diverged ? json("inf") : json(c2.value);
                csv += "doubling," + (c2.diverged ? "inf" : format_double(c2.value)) + "\n";
            }
            if (ga_p) {
                SupResult p = growth_exponent(nf);
                results["growth_exponent"] = p.value;
                csv += "p," + format_double(p.value) + "\n";
            }
            if (!ga_alpha_limit.empty()) {
                LimitDirection dir = ga_alpha_limit == "to-infinity"
                                         ? LimitDirection::to_infinity
                                         : LimitDirection::to_zero_plus;
                LimitVerdict v = alpha_limit_evidence(nf, ga_s, dir, ga_weight);
                json probes = json::array();
                for (auto& [l, val] : v.probes) probes.push_back({l, val});
                const char* cls = v.classification == LimitClass::evidence_zero ? "zero"
                                  : v.classification == LimitClass::evidence_positive ? "positive"
                                  : v.classification == LimitClass::evidence_infinite ? "infinite"
                                                                                      : "inconclusive";
                results["alpha_limit"] = {{"direction", ga_alpha_limit},
                                          {"weight", ga_weight},
                                          {"classification", cls},
                                          {"value", v.value},
                                          {"analytic", v.analytic},
                                          {"probes", probes}};
                csv += std::string("alpha_limit,") + cls + "\n";
            }
            if (!ga_domain.empty()) {
                Domain D = parse_domain_token(ga_domain);
                double bc = ball_condition(D);
                results["ball_condition"] = bc == kInf ? json("inf") : json(bc);
                rep["spec"]["domain"] = domain_to_json(D);
                csv += "ball_condition," + (bc == kInf ? "inf" : format_double(bc)) + "\n";
            }
            rep["results"] = results;
            emit(ga_format == "csv" ? csv : rep.dump(2), ga_out);
            return 0;
        }

        if (*cmd_est) {
            NFunction nf = parse_nfunction_token(es_nf);
            Domain D = parse_domain_token(es_domain);
            json spec{{"nfunction", nfunction_to_json(nf)},
                      {"s", es_s},
                      {"domain", domain_to_json(D)}};

            if (es_check == "polar") {
                TestFunction f = TestFunction::tensor_bump_2d();
                spec["check"] = "polar";
                spec["n_angles"] = es_nangles;
                auto [lhs, rhs] = polar_identity_check(nf, D, es_s, f, es_nangles);
                json rep = report_shell("estimate", spec);
                rep["results"] = {{"lhs", lhs.value},
                                  {"rhs", rhs.value},
                                  {"rel_gap", std::fabs(lhs.value - rhs.value) /
                                                  std::max(lhs.value, 1e-300)},
                                  {"lhs_error", lhs.abs_error_estimate},
                                  {"rhs_error", rhs.abs_error_estimate}};
                emit(es_format == "csv"
                         ? "lhs,rhs,rel_gap\n" + format_double(lhs.value) + "," +
                               format_double(rhs.value) + "," +
                               format_double(std::fabs(lhs.value - rhs.value) /
                                             std::max(lhs.value, 1e-300)) + "\n"
                         : rep.dump(2),
                     es_out);
                return 0;
            }

            if (es_sweep == "cutoff") {
                CutoffFamily fam;
                for (int k = es_kmin; k <= es_kmax; ++k) fam.eps_list.push_back(std::ldexp(1.0, -k));
                spec["sweep"] = "cutoff";
                spec["eps_kmin"] = es_kmin;
                spec["eps_kmax"] = es_kmax;
                auto rows = cutoff_sweep(nf, D, es_s, fam);
                json arr = json::array();
                std::string csv = "eps,numerator,hardy_denominator,poincare_denominator,hardy_"
                                  "quotient,poincare_quotient,hardy_denominator_divergent\n";
                for (const auto& r : rows) {
                    arr.push_back({{"eps", r.eps},
                                   {"numerator", r.numerator},
                                   {"hardy_denominator",
                                    r.hardy_denominator_divergent ? json("inf")
                                                                  : json(r.hardy_denominator)},
                                   {"poincare_denominator", r.poincare_denominator},
                                   {"hardy_quotient", r.hardy_quotient},
                                   {"poincare_quotient", r.poincare_quotient},
                                   {"hardy_denominator_divergent", r.hardy_denominator_divergent}});
                    csv += format_double(r.eps) + "," + format_double(r.numerator) + "," +
                           (r.hardy_denominator_divergent ? "inf"
                                                          : format_double(r.hardy_denominator)) +
                           "," + format_double(r.poincare_denominator) + "," +
                           format_double(r.hardy_quotient) + "," +
                           format_double(r.poincare_quotient) + "," +
                           (r.hardy_denominator_divergent ? "1" : "0") + "\n";
                }
                json rep = report_shell("estimate", spec);
                rep["results"] = {{"sweep", arr}};
                emit(es_format == "csv" ? csv : rep.dump(2), es_out);
                return 0;
            }

            QuotientKind kind = es_kind == "h"    ? QuotientKind::hardy
                                : es_kind == "p2" ? QuotientKind::poincare_full
                                                  : QuotientKind::poincare_regional;
            Budget budget;
            budget.grid_sizes.clear();
            for (std::size_t pos = 0; pos < es_grids.size();) {
                auto next = es_grids.find(',', pos);
                budget.grid_sizes.push_back(
                    std::stoi(es_grids.substr(pos, next == std::string::npos ? next : next - pos)));
                if (next == std::string::npos) break;
                pos = next + 1;
            }
            budget.restarts = es_restarts;
            budget.max_iters = es_max_iters;
            budget.amplitude_points = es_amp;
            budget.seed = es_seed;
            budget.threads = es_threads;
            budget.basis = es_basis == "linear" ? Spline1D::Basis::linear : Spline1D::Basis::cubic;

            spec["kind"] = es_kind;
            spec["budget"] = budget_to_json(budget);
            QuotientEstimate est = estimate_quotient(kind, nf, D, es_s, budget);
            if (!es_history.empty()) {
                std::string csv = "iteration,value\n";
                for (auto& [it, v] : est.history)
                    csv += std::to_string(it) + "," + format_double(v) + "\n";
                std::ofstream out(es_history, std::ios::binary);
                if (!out) fail(errc::schema, "cannot open history file " + es_history);
                out << csv;
            }
            json rep = report_shell("estimate", spec);
            json coef = json::array();
            for (double c : est.best_coefficients) coef.push_back(c);
            rep["results"] = {{"value", est.value},
                              {"search_value", est.search_value},
                              {"amplitude", est.best_amplitude},
                              {"refinement_level", est.refinement_level},
                              {"grid", est.best_trial.cells()},
                              {"coefficients", coef}};
            emit(es_format == "csv" ? "kind,value\n" + es_kind + "," + format_double(est.value) + "\n"
                                    : rep.dump(2),
                 es_out);
            return 0;
        }

        if (*cmd_t1) {
            Table1Report repT = table1(parse_grid(t1_grid), t1_q);
            json spec{{"q", t1_q}, {"s_grid", t1_grid}};
            json rep = report_shell("table1", spec);
            rep["results"] = table1_to_json(repT);
            emit(t1_format == "json" ? rep.dump(2) : table1_to_csv(repT), t1_out);
            return 0;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    (void)csv_escape;
    return 0;
}
