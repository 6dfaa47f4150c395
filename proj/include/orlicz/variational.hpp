#pragma once

#include "orlicz/modular.hpp"

namespace orlicz {

enum class QuotientKind { hardy, poincare_regional, poincare_full }; // H, P1, P2

struct Budget {
    std::vector<int> grid_sizes = {16};
    int restarts = 8;
    int max_iters = 2000;
    int amplitude_points = 31; // log-spaced in [1e-3, 1e3]; skipped for homogeneous gauges
    std::uint64_t seed = 0;
    double search_tol = 3e-4; // quadrature tolerance while optimizing
    double final_tol = 1e-6;  // tight recompute of the reported value
    Spline1D::Basis basis = Spline1D::Basis::cubic;
    int threads = 1;
};

/// Trial over an interval union: one zero-boundary spline per component.
class TrialFamily {
  public:
    TrialFamily() = default;
    TrialFamily(const IntervalUnion& U, int cells, Spline1D::Basis basis);

    int coef_count() const { return total_; }
    void set_coefficients(const std::vector<double>& c, double amplitude);
    TestFunction test_function() const;
    TrialFamily refined() const;
    std::vector<double> base_profile() const; // sine-bump nodal start
    const std::vector<Spline1D>& splines() const { return splines_; }
    int cells() const { return cells_; }

  private:
    std::vector<Spline1D> splines_;
    int cells_ = 0;
    int total_ = 0;
};

/// Upper-bound estimate of one of the quotient infima. `value` is the tight
/// recompute of the best trial's modular ratio; the optimizer history carries
/// (iteration, best value so far) pairs.
struct QuotientEstimate {
    QuotientKind kind = QuotientKind::poincare_regional;
    double value = kInf;
    TrialFamily best_trial;
    std::vector<double> best_coefficients;
    double best_amplitude = 1.0;
    std::vector<std::pair<long, double>> history;
    int refinement_level = 0;
    double search_value = kInf;
    std::vector<std::pair<int, double>> level_values; // (grid, tight value) per warm-start level
};

/// Multi-start simplex descent over spline coefficients (and an amplitude
/// scale for non-homogeneous gauges). Returns the smallest ratio found; an
/// upper bound of the true infimum, never a certificate.
QuotientEstimate estimate_quotient(QuotientKind kind, const NFunction& nf, const Domain& D,
                                   double s, const Budget& budget);

struct CutoffFamily {
    std::vector<double> eps_list; // decreasing
};

struct SweepRow {
    double eps = 0;
    double numerator = 0;        // M_{W^{s,A}(D)}(f_eps)
    double hardy_denominator = 0;
    double poincare_denominator = 0;
    double hardy_quotient = 0;
    double poincare_quotient = 0;
    bool hardy_denominator_divergent = false;
};

/// Boundary-layer sweep behind the necessity mechanism: quotients of the
/// mollified indicators f_eps for each eps in the family.
std::vector<SweepRow> cutoff_sweep(const NFunction& nf, const Domain& D, double s,
                                   const CutoffFamily& family, double tol_rel = 1e-6);

/// Ratio of the modulars of a concrete trial (used by tests and the
/// estimate invariants; quadrature at tol_rel). `num_scale_io`, when given,
/// carries the expected numerator magnitude across repeated calls so the
/// search loop can skip the per-call pilot pass.
double quotient_of(QuotientKind kind, const NFunction& nf, const Domain& D, double s,
                   const TestFunction& f, double tol_rel, bool* denominator_zero = nullptr,
                   double* num_scale_io = nullptr);

} // namespace orlicz
