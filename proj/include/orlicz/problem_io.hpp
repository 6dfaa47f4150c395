#pragma once

#include <string>

#include <json.hpp>

#include "orlicz/classifier.hpp"
#include "orlicz/domain.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/variational.hpp"

namespace orlicz {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// N-function spec:
///   {"kind": "power"|"power_log_plus"|"power_log_minus"|"llogl"|"sampled",
///    "q": number?, "samples": [[t, A(t)], ...]?}
/// Token shorthand: power:q=2, power_log_plus:q=1.5, llogl, sampled:FILE.
NFunction parse_nfunction(const json& spec);
NFunction parse_nfunction_token(const std::string& token);
json nfunction_to_json(const NFunction& nf);

/// Domain spec: {"shape": "...", shape-specific fields}; see README for the
/// field catalog. Token shorthand: interval:a,b  intervals:a,b;c,d  ball1d:r
/// box2d  strip:a,b  punctured1d, or a path to a JSON file.
Domain parse_domain(const json& spec);
Domain parse_domain_token(const std::string& token);
json domain_to_json(const Domain& D);

/// Budget spec: {"grid_sizes":[...], "restarts":n, "max_iters":n,
/// "amplitude_grid":n, "seed":n}
Budget parse_budget(const json& spec);
json budget_to_json(const Budget& b);

json verdicts_to_json(const std::vector<Verdict>& vs);
json table1_to_json(const Table1Report& rep);
std::string table1_to_csv(const Table1Report& rep);

/// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

} // namespace orlicz
