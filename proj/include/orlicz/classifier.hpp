#pragma once

#include <optional>

#include "orlicz/domain.hpp"
#include "orlicz/nfunction.hpp"

namespace orlicz {

enum class Inequality { fohi, rfopi, fopi };
enum class Status { holds, fails, unknown };
enum class Grade { theorem, evidence };

struct EvidenceItem {
    std::string name;
    std::string value;
};

/// One classified inequality with its rule citation and the hypothesis values
/// that made the rule fire. `grade` is `theorem` when every hypothesis was
/// settled analytically and `evidence` when numeric probing was involved.
struct Verdict {
    Inequality inequality = Inequality::fohi;
    Status status = Status::unknown;
    std::string rule;
    Grade grade = Grade::theorem;
    std::vector<EvidenceItem> evidence;
};

enum class DomainClassTag {
    bounded_lipschitz,
    punctured_space,
    above_lipschitz_graph,
    complement_bounded_lipschitz,
    open_set_with_sections,
    general_1d,
};

struct DomainClass {
    DomainClassTag tag = DomainClassTag::bounded_lipschitz;
    int dim = 1;
};

std::string to_string(Inequality i);
std::string to_string(Status s);
std::string to_string(Grade g);
std::string to_string(DomainClassTag t);
std::optional<DomainClassTag> domain_class_from_string(const std::string& s);

/// Rule engine over the sufficiency/necessity theorems. Emits one verdict per
/// inequality; `unknown` when no rule fires or probing is inconclusive. All
/// applicable rules run in audit mode; disagreement raises a contradiction
/// error.
std::vector<Verdict> classify(const NFunction& nf, double s, const DomainClass& dc,
                              const Domain* D = nullptr);

struct Table1Cell {
    double s = 0;
    Status fohi = Status::unknown;
    Status rfopi = Status::unknown;
    std::string fohi_rule, rfopi_rule;
};

struct Table1Row {
    std::string gauge;
    std::vector<Table1Cell> cells;
};

struct Table1Report {
    double q = 2;
    std::vector<Table1Row> rows;
};

/// FOHI/RFOPI verdicts for the four catalog gauges over an s grid on bounded
/// Lipschitz domains (the golden-reference table).
Table1Report table1(const std::vector<double>& s_grid, double q);

struct LsCheckResult {
    bool is_ls_evidence = false;
    int sections_tested = 0;
    double min_section_p2 = 0;
};

/// Samples directions from the shape's admissible cone and estimates P2 on
/// the 1-D sections; the minimum is the uniformity evidence.
LsCheckResult ls_check(const NFunction& nf, double s, const Domain& D);

} // namespace orlicz
