#include "orlicz/problem_io.hpp"

#include <charconv>
#include <fstream>

namespace orlicz {

std::string format_double(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        fail(errc::schema, std::string("spec: missing numeric field '") + key + "'");
    return j[key].get<double>();
}

std::vector<double> require_vector(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        fail(errc::schema, std::string("spec: missing array field '") + key + "'");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) fail(errc::schema, std::string("spec: non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::pair<double, double>> require_pairs(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        fail(errc::schema, std::string("spec: missing array field '") + key + "'");
    std::vector<std::pair<double, double>> out;
    for (const auto& v : j[key]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            fail(errc::schema, std::string("spec: '") + key + "' entries must be [a, b] pairs");
        out.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return out;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::schema, "spec: cannot open file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::schema, std::string("spec: JSON parse error in ") + path + ": " + e.what());
    }
    return j;
}

} // namespace

// ---------------------------------------------------------------------------
// N-function specs
// ---------------------------------------------------------------------------

NFunction parse_nfunction(const json& spec) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        fail(errc::schema, "nfunction spec: missing 'kind'");
    std::string kind = spec["kind"].get<std::string>();
    if (kind == "power") return NFunction::power(require_number(spec, "q"));
    if (kind == "power_log_plus") return NFunction::power_log_plus(require_number(spec, "q"));
    if (kind == "power_log_minus") return NFunction::power_log_minus(require_number(spec, "q"));
    if (kind == "llogl") return NFunction::llogl();
    if (kind == "sampled") return NFunction::sampled(require_pairs(spec, "samples"));
    fail(errc::schema, "nfunction spec: unknown kind '" + kind + "'");
}

NFunction parse_nfunction_token(const std::string& token) {
    auto colon = token.find(':');
    std::string head = token.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : token.substr(colon + 1);
    auto parse_q = [&]() -> double {
        auto eq = rest.find('=');
        std::string v = eq == std::string::npos ? rest : rest.substr(eq + 1);
        try {
            return std::stod(v);
        } catch (...) {
            fail(errc::schema, "nfunction token: bad q in '" + token + "'");
        }
    };
    if (head == "power") return NFunction::power(parse_q());
    if (head == "power_log_plus") return NFunction::power_log_plus(parse_q());
    if (head == "power_log_minus") return NFunction::power_log_minus(parse_q());
    if (head == "llogl") return NFunction::llogl();
    if (head == "sampled") return parse_nfunction(load_file(rest));
    // fall back: treat the token as a JSON file path
    return parse_nfunction(load_file(token));
}

json nfunction_to_json(const NFunction& nf) {
    json j;
    switch (nf.kind()) {
    case NFunction::Kind::power:
        j["kind"] = "power";
        j["q"] = nf.param_q();
        break;
    case NFunction::Kind::power_log_plus:
        j["kind"] = "power_log_plus";
        j["q"] = nf.param_q();
        break;
    case NFunction::Kind::power_log_minus:
        j["kind"] = "power_log_minus";
        j["q"] = nf.param_q();
        break;
    case NFunction::Kind::llogl:
        j["kind"] = "llogl";
        break;
    case NFunction::Kind::sampled:
        j["kind"] = "sampled";
        break;
    }
    if (nf.envelope_active()) {
        auto [u, v] = nf.envelope_span();
        j["convex_envelope"] = {{"from", u}, {"to", v}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// Domain specs
// ---------------------------------------------------------------------------

Domain parse_domain(const json& spec) {
    if (!spec.is_object() || !spec.contains("shape") || !spec["shape"].is_string())
        fail(errc::schema, "domain spec: missing 'shape'");
    std::string shape = spec["shape"].get<std::string>();
    if (shape == "interval_union") {
        std::vector<Interval> parts;
        for (auto& [a, b] : require_pairs(spec, "intervals")) parts.push_back({a, b});
        return Domain::interval_union(IntervalUnion(std::move(parts)));
    }
    if (shape == "box") return Domain::box(require_vector(spec, "lo"), require_vector(spec, "hi"));
    if (shape == "ball") return Domain::ball(require_vector(spec, "center"), require_number(spec, "radius"));
    if (shape == "annulus_union")
        return Domain::annulus_union(require_vector(spec, "center"), require_pairs(spec, "rings"));
    if (shape == "punctured_space") return Domain::punctured_space(require_vector(spec, "point"));
    if (shape == "complement_of_box")
        return Domain::complement_of_box(require_vector(spec, "lo"), require_vector(spec, "hi"));
    if (shape == "half_space_above_graph") {
        PiecewiseLinear g;
        g.xs = require_vector(spec, "xs");
        g.ys = require_vector(spec, "ys");
        g.slope_left = require_number(spec, "slope_left");
        g.slope_right = require_number(spec, "slope_right");
        return Domain::half_space_above_graph(std::move(g));
    }
    if (shape == "strip_union") {
        std::vector<Interval> parts;
        for (auto& [a, b] : require_pairs(spec, "intervals")) parts.push_back({a, b});
        return Domain::strip_union(IntervalUnion(std::move(parts)));
    }
    if (shape == "lattice_holes") return Domain::lattice_holes(require_number(spec, "hole_radius"));
    fail(errc::schema, "domain spec: unknown shape '" + shape + "'");
}

Domain parse_domain_token(const std::string& token) {
    auto colon = token.find(':');
    std::string head = token.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : token.substr(colon + 1);
    auto split_nums = [&](const std::string& s, char sep) {
        std::vector<double> out;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            auto next = s.find(sep, pos);
            std::string piece = s.substr(pos, next == std::string::npos ? next : next - pos);
            if (!piece.empty()) {
                try {
                    out.push_back(std::stod(piece));
                } catch (...) {
                    fail(errc::schema, "domain token: bad number in '" + token + "'");
                }
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return out;
    };
    if (head == "interval") {
        auto v = split_nums(rest, ',');
        if (v.size() != 2) fail(errc::schema, "domain token: interval:a,b");
        return Domain::interval(v[0], v[1]);
    }
    if (head == "intervals") {
        std::vector<Interval> parts;
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto next = rest.find(';', pos);
            auto v = split_nums(rest.substr(pos, next == std::string::npos ? next : next - pos), ',');
            if (v.size() != 2) fail(errc::schema, "domain token: intervals:a,b;c,d");
            parts.push_back({v[0], v[1]});
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return Domain::interval_union(IntervalUnion(std::move(parts)));
    }
    if (head == "ball1d") {
        auto v = split_nums(rest, ',');
        if (v.size() == 1) return Domain::ball({0.0}, v[0]);
        if (v.size() == 2) return Domain::ball({v[0]}, v[1]);
        fail(errc::schema, "domain token: ball1d:r or ball1d:c,r");
    }
    if (head == "box2d") {
        if (rest.empty()) return Domain::box({0, 0}, {1, 1});
        auto v = split_nums(rest, ',');
        if (v.size() != 4) fail(errc::schema, "domain token: box2d:x0,x1,y0,y1");
        return Domain::box({v[0], v[2]}, {v[1], v[3]});
    }
    if (head == "strip") {
        auto v = split_nums(rest, ',');
        if (v.size() != 2) fail(errc::schema, "domain token: strip:a,b");
        return Domain::strip_union(IntervalUnion::single(v[0], v[1]));
    }
    if (head == "punctured1d") return Domain::punctured_space({0.0});
    if (head == "punctured2d") return Domain::punctured_space({0.0, 0.0});
    if (head == "file") return parse_domain(load_file(rest));
    return parse_domain(load_file(token));
}

json domain_to_json(const Domain& D) {
    json j;
    j["shape"] = D.name();
    j["dim"] = D.dim();
    switch (D.shape()) {
    case Domain::Shape::interval_union:
    case Domain::Shape::strip_union: {
        json arr = json::array();
        for (const auto& p : D.intervals().parts()) arr.push_back({p.lo, p.hi});
        j["intervals"] = arr;
        break;
    }
    case Domain::Shape::box:
    case Domain::Shape::complement_of_box:
        j["lo"] = D.box_lo();
        j["hi"] = D.box_hi();
        break;
    case Domain::Shape::ball:
        j["center"] = D.center();
        j["radius"] = D.radius();
        break;
    case Domain::Shape::annulus_union: {
        j["center"] = D.center();
        json arr = json::array();
        for (auto& [a, b] : D.rings()) arr.push_back({a, b});
        j["rings"] = arr;
        break;
    }
    case Domain::Shape::punctured_space:
        j["point"] = D.center();
        break;
    case Domain::Shape::half_space_above_graph:
        j["xs"] = D.graph().xs;
        j["ys"] = D.graph().ys;
        j["slope_left"] = D.graph().slope_left;
        j["slope_right"] = D.graph().slope_right;
        break;
    case Domain::Shape::lattice_holes:
        j["hole_radius"] = D.hole_radius();
        break;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Budgets and reports
// ---------------------------------------------------------------------------

Budget parse_budget(const json& spec) {
    Budget b;
    if (spec.contains("grid_sizes")) {
        b.grid_sizes.clear();
        for (const auto& v : spec["grid_sizes"]) b.grid_sizes.push_back(v.get<int>());
    }
    if (spec.contains("restarts")) b.restarts = spec["restarts"].get<int>();
    if (spec.contains("max_iters")) b.max_iters = spec["max_iters"].get<int>();
    if (spec.contains("amplitude_grid")) b.amplitude_points = spec["amplitude_grid"].get<int>();
    if (spec.contains("seed")) b.seed = spec["seed"].get<std::uint64_t>();
    if (spec.contains("basis"))
        b.basis = spec["basis"].get<std::string>() == "linear" ? Spline1D::Basis::linear
                                                               : Spline1D::Basis::cubic;
    if (spec.contains("threads")) b.threads = spec["threads"].get<int>();
    return b;
}

json budget_to_json(const Budget& b) {
    return json{{"grid_sizes", b.grid_sizes},
                {"restarts", b.restarts},
                {"max_iters", b.max_iters},
                {"amplitude_grid", b.amplitude_points},
                {"seed", b.seed},
                {"basis", b.basis == Spline1D::Basis::linear ? "linear" : "cubic"},
                {"threads", b.threads}};
}

json verdicts_to_json(const std::vector<Verdict>& vs) {
    json arr = json::array();
    for (const auto& v : vs) {
        json ev = json::array();
        for (const auto& e : v.evidence) ev.push_back({{"name", e.name}, {"value", e.value}});
        arr.push_back({{"inequality", to_string(v.inequality)},
                       {"status", to_string(v.status)},
                       {"rule", v.rule},
                       {"grade", to_string(v.grade)},
                       {"evidence", ev}});
    }
    return arr;
}

json table1_to_json(const Table1Report& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json cells = json::array();
        for (const auto& c : r.cells)
            cells.push_back({{"s", c.s},
                             {"fohi", to_string(c.fohi)},
                             {"rfopi", to_string(c.rfopi)},
                             {"fohi_rule", c.fohi_rule},
                             {"rfopi_rule", c.rfopi_rule}});
        rows.push_back({{"gauge", r.gauge}, {"cells", cells}});
    }
    return json{{"q", rep.q}, {"rows", rows}};
}

std::string table1_to_csv(const Table1Report& rep) {
    std::string out = "gauge,s,fohi,rfopi,fohi_rule,rfopi_rule\n";
    for (const auto& r : rep.rows)
        for (const auto& c : r.cells) {
            out += r.gauge;
            out += ',';
            out += format_double(c.s);
            out += ',';
            out += to_string(c.fohi);
            out += ',';
            out += to_string(c.rfopi);
            out += ',';
            out += c.fohi_rule.empty() ? "-" : c.fohi_rule;
            out += ',';
            out += c.rfopi_rule.empty() ? "-" : c.rfopi_rule;
            out += '\n';
        }
    return out;
}

} // namespace orlicz
