#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

/// An Orlicz gauge (N-function): convex A:[0,inf)->[0,inf) with A(t)/t -> 0 at
/// 0 and -> inf at infinity, together with its right-derivative a.
///
/// Catalog entries:
///   power            A(t) = t^q, q > 1
///   power_log_plus   A(t) = t^q (1 + |log t|)
///   power_log_minus  A(t) = t^q / log(e + t)
///   llogl            A(t) = (1+t) log(1+t) - t
///   sampled          monotone-convex interpolation of user samples
///
/// The raw formula t^q (1+|log t|) dips below its chords near t = 1 when
/// q < (3+sqrt(5))/2, and t^q / log(e+t) does so for q close to 1. In Orlicz
/// space practice these formulas stand for any equivalent convex gauge; the
/// constructor therefore replaces the dip by the convex envelope (the tangent
/// segment computed at construction). Values outside the replaced segment and
/// all growth gauges (alpha, beta, doubling, growth exponent) keep their
/// asymptotics.
class NFunction {
  public:
    enum class Kind { power, power_log_plus, power_log_minus, llogl, sampled };

    static NFunction power(double q);
    static NFunction power_log_plus(double q);
    static NFunction power_log_minus(double q);
    static NFunction llogl();
    /// Samples (t_i, A_i), t_i increasing and positive. Interpolation is
    /// piecewise linear with a quadratic head on [0, t_1] and a power tail
    /// beyond t_n; samples whose slopes are not non-decreasing are rejected.
    static NFunction sampled(std::vector<std::pair<double, double>> samples);

    /// A(t); non-finite intermediates propagate as +inf.
    double operator()(double t) const;

    /// right-derivative a(t)
    double slope(double t) const;

    Kind kind() const { return kind_; }
    bool is_catalog() const { return kind_ != Kind::sampled; }
    double param_q() const { return q_; }
    bool envelope_active() const { return env_active_; }
    std::pair<double, double> envelope_span() const { return {env_u_, env_v_}; }

    std::string name() const;

    bool operator==(const NFunction&) const = default;

  private:
    NFunction() = default;

    Kind kind_ = Kind::power;
    double q_ = 2.0;
    // convex-envelope segment [u, v]: A(t) = A(u) + m (t - u)
    bool env_active_ = false;
    double env_u_ = 0, env_v_ = 0, env_m_ = 0, env_au_ = 0;
    // sampled representation
    std::vector<double> st_, sa_, sm_; // knots, values, segment slopes
    double head_c_ = 0;                // A = head_c * t^2 on [0, t_1]
    double tail_gamma_ = 2;            // A = A_n (t/t_n)^gamma beyond t_n

    double raw_eval(double t) const;
    double raw_slope(double t) const;
    void build_envelope();
};

// ---------------------------------------------------------------------------
// Scalar gauges consumed by the theorems.
// ---------------------------------------------------------------------------

/// Result of a sup over the probe grid; `diverged` marks a sup beyond the
/// divergence threshold (reported value is +inf).
struct SupResult {
    double value = 0;
    double arg = 0;
    bool diverged = false;
};

/// sup_{t>0} A(2t)/A(t) over a log grid with golden-section refinement.
/// +inf marker when the running sup exceeds the divergence threshold.
SupResult doubling_constant(const NFunction& nf);

/// p = sup_{t>0} t a(t) / A(t); requires a doubling gauge.
SupResult growth_exponent(const NFunction& nf);

/// alpha_{s,A}(lambda) = sup_{t>0} A(lambda t) / (lambda^{1/s} A(t)).
/// The ratio is 0/0 at t = 0, so the sup is taken over t > 0.
SupResult alpha(const NFunction& nf, double s, double lambda);

enum class LimitDirection { to_zero_plus, to_infinity };

enum class LimitClass { evidence_zero, evidence_positive, evidence_infinite, inconclusive };

struct LimitVerdict {
    LimitDirection direction = LimitDirection::to_zero_plus;
    LimitClass classification = LimitClass::inconclusive;
    double value = 0; // limit value when evidence_positive
    bool analytic = false;
    std::vector<std::pair<double, double>> probes; // (lambda, lambda^w alpha(lambda))
};

/// Evidence for liminf lambda^w alpha_{s,A}(lambda) along the direction.
/// Catalog gauges get the analytic limit (verdict tagged analytic); otherwise
/// the verdict is probe-based evidence, never proof.
LimitVerdict alpha_limit_evidence(const NFunction& nf, double s, LimitDirection dir,
                                  double weight_exponent);

struct BetaResult {
    LimitClass classification = LimitClass::inconclusive;
    double value = 0;   // beta when evidence_positive (or analytic finite value)
    double g_final = 0; // last numeric probe of g(eps)
    bool analytic = false;
    std::vector<std::pair<double, double>> probes; // (eps, g(eps))
};

/// beta = lim_{eps->0+} eps * Int_0^{eps^{-s}} A(z)/z dz, probed on a
/// decreasing eps sequence with Aitken extrapolation; analytic shortcut for
/// catalog entries (always cross-run numerically so g_final is reported).
BetaResult beta_limit(const NFunction& nf, double s);

// analytic limit classification for catalog gauges (nullopt for sampled)
std::optional<LimitVerdict> analytic_alpha_limit(const NFunction& nf, double s,
                                                 LimitDirection dir, double weight_exponent);
std::optional<BetaResult> analytic_beta(const NFunction& nf, double s);

} // namespace orlicz
