#include "orlicz/nfunction.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

constexpr double kGridLo = 1e-12, kGridHi = 1e12;
constexpr int kGridPoints = 2048;
constexpr double kDoublingDivergence = 1e12;
constexpr double kGrowthDivergence = 1e6;

std::string fmt_num(double v) {
    std::array<char, 32> buf;
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

// envelope-free q threshold for t^q (1+|log t|): (3+sqrt(5))/2
const double kPlusConvexQ = (3.0 + std::sqrt(5.0)) / 2.0;

} // namespace

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

double NFunction::raw_eval(double t) const {
    if (!(t > 0)) return 0.0;
    switch (kind_) {
    case Kind::power:
        return std::pow(t, q_);
    case Kind::power_log_plus:
        return std::pow(t, q_) * (1.0 + std::fabs(std::log(t)));
    case Kind::power_log_minus:
        return std::pow(t, q_) / std::log(std::exp(1.0) + t);
    case Kind::llogl: {
        if (t < 0.0625) {
            // (1+t)log(1+t) - t = sum_{k>=2} (-1)^k t^k / (k(k-1));
            // the direct formula cancels catastrophically for small t
            double sum = 0.0, p = t * t, sign = 1.0;
            for (int k = 2; k <= 12; ++k) {
                sum += sign * p / (double(k) * (k - 1));
                p *= t;
                sign = -sign;
            }
            return sum;
        }
        return (1.0 + t) * std::log1p(t) - t;
    }
    case Kind::sampled: {
        if (t <= st_.front()) return head_c_ * t * t;
        if (t >= st_.back()) return sa_.back() * std::pow(t / st_.back(), tail_gamma_);
        auto it = std::upper_bound(st_.begin(), st_.end(), t);
        std::size_t i = std::size_t(it - st_.begin()) - 1;
        return sa_[i] + sm_[i] * (t - st_[i]);
    }
    }
    return 0.0;
}

double NFunction::raw_slope(double t) const {
    if (!(t > 0)) return 0.0;
    switch (kind_) {
    case Kind::power:
        return q_ * std::pow(t, q_ - 1.0);
    case Kind::power_log_plus: {
        double lt = std::log(t);
        if (t < 1.0) return std::pow(t, q_ - 1.0) * (q_ - 1.0 - q_ * lt);
        return std::pow(t, q_ - 1.0) * (q_ + 1.0 + q_ * lt);
    }
    case Kind::power_log_minus: {
        double L = std::log(std::exp(1.0) + t);
        return std::pow(t, q_ - 1.0) * (q_ * L - t / (std::exp(1.0) + t)) / (L * L);
    }
    case Kind::llogl:
        return std::log1p(t);
    case Kind::sampled: {
        if (t < st_.front()) return 2.0 * head_c_ * t;
        if (t >= st_.back())
            return tail_gamma_ * sa_.back() / st_.back() * std::pow(t / st_.back(), tail_gamma_ - 1.0);
        auto it = std::upper_bound(st_.begin(), st_.end(), t);
        std::size_t i = std::size_t(it - st_.begin()) - 1;
        return sm_[i];
    }
    }
    return 0.0;
}

double NFunction::operator()(double t) const {
    if (env_active_ && t > env_u_ && t < env_v_) return env_au_ + env_m_ * (t - env_u_);
    return raw_eval(t);
}

double NFunction::slope(double t) const {
    if (env_active_ && t >= env_u_ && t < env_v_) return env_m_;
    return raw_slope(t);
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

void NFunction::build_envelope() {
    if (kind_ == Kind::power_log_plus) {
        if (q_ >= kPlusConvexQ) return;
        // Dip sits on (t*, 1); the kink at t = 1 absorbs the right tangency,
        // so the envelope is the tangent from u through (1, A(1)) = (1, 1).
        double tstar = std::exp(((q_ - 1.0) * (q_ - 1.0) - q_) / (q_ * (q_ - 1.0)));
        auto psi = [&](double u) { return raw_eval(u) + raw_slope(u) * (1.0 - u) - 1.0; };
        double lo = 1e-12, hi = tstar;
        if (!(psi(lo) < 0.0 && psi(hi) > 0.0))
            fail(errc::invalid_nfunction, "envelope bracket failed for power_log_plus");
        for (int i = 0; i < 200 && (hi - lo) > 1e-16 * hi; ++i) {
            double m = 0.5 * (lo + hi);
            (psi(m) < 0.0 ? lo : hi) = m;
        }
        env_u_ = 0.5 * (lo + hi);
        env_v_ = 1.0;
        env_m_ = raw_slope(env_u_);
        env_au_ = raw_eval(env_u_);
        env_active_ = true;
        return;
    }
    if (kind_ == Kind::power_log_minus) {
        // locate a slope dip, if any, on a dense log grid
        const int n = 4096;
        double dip_lo = 0, dip_hi = 0;
        bool dip = false;
        double prev = raw_slope(kGridLo), prev_t = kGridLo;
        for (int i = 1; i < n; ++i) {
            double t = kGridLo * std::pow(kGridHi / kGridLo, double(i) / (n - 1));
            double sl = raw_slope(t);
            if (sl < prev) {
                if (!dip) dip_lo = prev_t;
                dip_hi = t;
                dip = true;
            }
            prev = sl;
            prev_t = t;
        }
        if (!dip) return;
        double slope_min_right = raw_slope(dip_hi);
        auto v_of = [&](double u) {
            double target = raw_slope(u);
            if (target < slope_min_right) return -1.0;
            double lo = dip_hi, hi = 1e15;
            for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
                double m = std::sqrt(lo * hi);
                (raw_slope(m) < target ? lo : hi) = m;
            }
            return std::sqrt(lo * hi);
        };
        auto gap = [&](double u) {
            double v = v_of(u);
            if (v < 0) return std::pair<double, double>{-kInf, v};
            return std::pair<double, double>{raw_eval(u) + raw_slope(u) * (v - u) - raw_eval(v), v};
        };
        // scan for a sign change of the tangency gap along the left branch
        double ua = 0, ub = 0, ga = 0;
        bool have = false, bracket = false;
        for (int i = 0; i <= 256; ++i) {
            double u = 1e-8 * std::pow(dip_lo / 1e-8, double(i) / 256.0);
            auto [g, v] = gap(u);
            if (!finite(g)) continue;
            if (have && ga * g <= 0.0) {
                ub = u;
                bracket = true;
                break;
            }
            ua = u;
            ga = g;
            have = true;
        }
        if (!bracket) fail(errc::invalid_nfunction, "envelope bracket failed for power_log_minus");
        for (int i = 0; i < 200 && ub - ua > 1e-15 * ub; ++i) {
            double m = 0.5 * (ua + ub);
            auto [g, v] = gap(m);
            (void)v;
            (ga * g <= 0.0 ? ub : ua) = m;
        }
        env_u_ = 0.5 * (ua + ub);
        env_v_ = v_of(env_u_);
        env_m_ = raw_slope(env_u_);
        env_au_ = raw_eval(env_u_);
        env_active_ = true;
    }
}

NFunction NFunction::power(double q) {
    if (!(q > 1.0)) fail(errc::invalid_nfunction, "power gauge requires q > 1");
    NFunction nf;
    nf.kind_ = Kind::power;
    nf.q_ = q;
    return nf;
}

NFunction NFunction::power_log_plus(double q) {
    if (!(q > 1.0)) fail(errc::invalid_nfunction, "power_log_plus gauge requires q > 1");
    NFunction nf;
    nf.kind_ = Kind::power_log_plus;
    nf.q_ = q;
    nf.build_envelope();
    return nf;
}

NFunction NFunction::power_log_minus(double q) {
    if (!(q > 1.0)) fail(errc::invalid_nfunction, "power_log_minus gauge requires q > 1");
    NFunction nf;
    nf.kind_ = Kind::power_log_minus;
    nf.q_ = q;
    nf.build_envelope();
    return nf;
}

NFunction NFunction::llogl() {
    NFunction nf;
    nf.kind_ = Kind::llogl;
    nf.q_ = 0;
    return nf;
}

NFunction NFunction::sampled(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) fail(errc::invalid_nfunction, "sampled gauge needs >= 2 samples");
    std::sort(samples.begin(), samples.end());
    NFunction nf;
    nf.kind_ = Kind::sampled;
    nf.q_ = 0;
    for (auto& [t, a] : samples) {
        if (!(t > 0) || !(a > 0) || !finite(t) || !finite(a))
            fail(errc::invalid_nfunction, "sampled gauge: samples must be finite and positive");
        nf.st_.push_back(t);
        nf.sa_.push_back(a);
    }
    for (std::size_t i = 1; i < nf.st_.size(); ++i) {
        if (!(nf.st_[i] > nf.st_[i - 1]))
            fail(errc::invalid_nfunction, "sampled gauge: duplicate abscissae");
        if (!(nf.sa_[i] > nf.sa_[i - 1]))
            fail(errc::invalid_nfunction, "sampled gauge: values must be strictly increasing");
        nf.sm_.push_back((nf.sa_[i] - nf.sa_[i - 1]) / (nf.st_[i] - nf.st_[i - 1]));
    }
    for (std::size_t i = 1; i < nf.sm_.size(); ++i)
        if (nf.sm_[i] < nf.sm_[i - 1] * (1.0 - 1e-12))
            fail(errc::invalid_nfunction, "sampled gauge: slopes must be non-decreasing (convexity)");
    nf.head_c_ = nf.sa_.front() / (nf.st_.front() * nf.st_.front());
    if (2.0 * nf.head_c_ * nf.st_.front() > nf.sm_.front() * (1.0 + 1e-12))
        fail(errc::invalid_nfunction, "sampled gauge: quadratic head incompatible with first slope");
    nf.tail_gamma_ = std::max(2.0, nf.st_.back() * nf.sm_.back() / nf.sa_.back());
    return nf;
}

std::string NFunction::name() const {
    switch (kind_) {
    case Kind::power:
        return "power:q=" + fmt_num(q_);
    case Kind::power_log_plus:
        return "power_log_plus:q=" + fmt_num(q_);
    case Kind::power_log_minus:
        return "power_log_minus:q=" + fmt_num(q_);
    case Kind::llogl:
        return "llogl";
    case Kind::sampled:
        return "sampled:n=" + std::to_string(st_.size());
    }
    return "?";
}

// ---------------------------------------------------------------------------
// grid sups
// ---------------------------------------------------------------------------

namespace {

// Maximize a log-ratio over the probe grid with golden-section refinement
// around the grid argmax (in log t). The functional returns the natural log of
// the ratio; +inf marks an overflowing ratio, NaN marks an unusable probe.
template <typename F>
SupResult sup_over_grid(const F& logratio, bool* saw_inf = nullptr) {
    const double xlo = std::log(kGridLo), xhi = std::log(kGridHi);
    double best = -kInf, best_x = xlo;
    int best_i = -1;
    if (saw_inf) *saw_inf = false;
    for (int i = 0; i < kGridPoints; ++i) {
        double x = xlo + (xhi - xlo) * double(i) / (kGridPoints - 1);
        double r = logratio(std::exp(x));
        if (std::isnan(r)) continue;
        if (r == kInf) {
            if (saw_inf) *saw_inf = true;
            continue;
        }
        if (r > best) {
            best = r;
            best_x = x;
            best_i = i;
        }
    }
    if (best_i >= 0) {
        const double step = (xhi - xlo) / (kGridPoints - 1);
        double a = best_x - (best_i > 0 ? step : 0.0);
        double b = best_x + (best_i < kGridPoints - 1 ? step : 0.0);
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - invphi * (b - a), d = a + invphi * (b - a);
        double fc = logratio(std::exp(c)), fd = logratio(std::exp(d));
        for (int it = 0; it < 120 && (b - a) > 1e-15 * std::max(1.0, std::fabs(b)); ++it) {
            auto track = [&](double x, double v) {
                if (!std::isnan(v) && v != kInf && v > best) {
                    best = v;
                    best_x = x;
                }
            };
            track(c, fc);
            track(d, fd);
            if (std::isnan(fc) || std::isnan(fd)) break;
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = logratio(std::exp(c));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = logratio(std::exp(d));
            }
        }
    }
    SupResult out;
    out.value = std::exp(best);
    out.arg = std::exp(best_x);
    return out;
}

} // namespace

SupResult doubling_constant(const NFunction& nf) {
    auto logratio = [&](double t) -> double {
        double a2 = nf(2.0 * t), a1 = nf(t);
        if (!finite(a2) || !finite(a1))
            fail(errc::invalid_nfunction, "doubling_constant: A non-finite at probe point");
        if (a1 <= 0.0) return std::nan("");
        return std::log(a2) - std::log(a1);
    };
    SupResult r = sup_over_grid(logratio);
    if (r.value > kDoublingDivergence) {
        r.diverged = true;
        r.value = kInf;
    }
    return r;
}

SupResult growth_exponent(const NFunction& nf) {
    SupResult c2 = doubling_constant(nf);
    if (c2.diverged) fail(errc::not_delta2, "growth_exponent: gauge is not doubling");
    auto logratio = [&](double t) -> double {
        double a = nf.slope(t), A = nf(t);
        if (!finite(a) || !finite(A))
            fail(errc::invalid_nfunction, "growth_exponent: gauge non-finite at probe point");
        if (A <= 0.0 || a <= 0.0) return std::nan("");
        return std::log(t) + std::log(a) - std::log(A);
    };
    SupResult r = sup_over_grid(logratio);
    if (r.value > kGrowthDivergence) fail(errc::not_delta2, "growth_exponent: divergent sup");
    return r;
}

SupResult alpha(const NFunction& nf, double s, double lambda) {
    if (!(lambda > 0)) fail(errc::schema, "alpha: lambda must be positive");
    if (!(s > 0 && s < 1)) fail(errc::schema, "alpha: s must lie in (0,1)");
    const double log_shift = std::log(lambda) / s;
    bool saw_inf = false;
    auto logratio = [&](double t) -> double {
        double num = nf(lambda * t), den = nf(t);
        if (den <= 0.0 || !finite(den)) return std::nan("");
        if (!finite(num)) return kInf; // overflow counts as +inf contribution
        if (num <= 0.0) return std::nan("");
        return std::log(num) - std::log(den) - log_shift;
    };
    SupResult r = sup_over_grid(logratio, &saw_inf);
    if (saw_inf || !finite(r.value)) {
        r.value = kInf;
        r.diverged = true;
    }
    return r;
}

// ---------------------------------------------------------------------------
// limit evidence
// ---------------------------------------------------------------------------

namespace {

// classification thresholds (see module design notes)
constexpr int kLimitTail = 5;
constexpr double kZeroThreshold = 1e-6;
constexpr double kInfThreshold = 1e6;
constexpr double kSpreadThreshold = 1e-3;

LimitClass classify_probes(const std::vector<double>& v, double* limit_value) {
    if (v.size() < kLimitTail) return LimitClass::inconclusive;
    const std::size_t n = v.size();
    int infs = 0;
    for (std::size_t i = n - kLimitTail; i < n; ++i)
        if (v[i] == kInf) ++infs;
    bool inc = true, dec = true;
    for (std::size_t i = n - kLimitTail + 1; i < n; ++i) {
        if (!(v[i] > v[i - 1])) inc = false;
        if (!(v[i] < v[i - 1])) dec = false;
    }
    if (infs >= 2 || (inc && v[n - 1] > kInfThreshold)) return LimitClass::evidence_infinite;
    if (dec && v[n - 1] < kZeroThreshold) return LimitClass::evidence_zero;
    double lo = kInf, hi = -kInf;
    for (std::size_t i = n - kLimitTail; i < n; ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
    }
    if (finite(hi) && hi > 0 && (hi - lo) / hi < kSpreadThreshold) {
        if (limit_value) *limit_value = v[n - 1];
        return LimitClass::evidence_positive;
    }
    return LimitClass::inconclusive;
}

// exponent comparison tolerance for analytic limit laws
bool is_zero_exp(double e) { return std::fabs(e) <= 1e-12; }

} // namespace

std::optional<LimitVerdict> analytic_alpha_limit(const NFunction& nf, double s,
                                                 LimitDirection dir, double w) {
    if (!nf.is_catalog()) return std::nullopt;
    const bool to0 = dir == LimitDirection::to_zero_plus;
    LimitVerdict v;
    v.direction = dir;
    v.analytic = true;
    auto zero = [&] { v.classification = LimitClass::evidence_zero; };
    auto infinite = [&] { v.classification = LimitClass::evidence_infinite; };
    auto positive = [&](double val) {
        v.classification = LimitClass::evidence_positive;
        v.value = val;
    };
    switch (nf.kind()) {
    case NFunction::Kind::power: {
        double e = w + nf.param_q() - 1.0 / s;
        if (is_zero_exp(e))
            positive(1.0);
        else if ((e > 0) == to0)
            zero();
        else
            infinite();
        break;
    }
    case NFunction::Kind::power_log_plus: {
        // alpha(lambda) = lambda^{q-1/s} (1 + |log lambda|) for the raw gauge
        double e = w + nf.param_q() - 1.0 / s;
        if (to0)
            (e > 0 && !is_zero_exp(e)) ? zero() : infinite();
        else
            (e < 0 && !is_zero_exp(e)) ? zero() : infinite();
        break;
    }
    case NFunction::Kind::power_log_minus: {
        double e = w + nf.param_q() - 1.0 / s;
        if (to0) {
            (e > 0 && !is_zero_exp(e)) ? zero() : infinite();
        } else {
            if (is_zero_exp(e))
                positive(1.0);
            else if (e < 0)
                zero();
            else
                infinite();
        }
        break;
    }
    case NFunction::Kind::llogl: {
        // growth degree 1 at infinity scales the lambda->0 end, degree 2 at 0
        // scales the lambda->infinity end
        double e = to0 ? (w + 1.0 - 1.0 / s) : (w + 2.0 - 1.0 / s);
        if (is_zero_exp(e))
            positive(1.0);
        else if ((e > 0) == to0)
            zero();
        else
            infinite();
        break;
    }
    case NFunction::Kind::sampled:
        return std::nullopt;
    }
    return v;
}

LimitVerdict alpha_limit_evidence(const NFunction& nf, double s, LimitDirection dir,
                                  double weight_exponent) {
    const bool to0 = dir == LimitDirection::to_zero_plus;
    if (auto av = analytic_alpha_limit(nf, s, dir, weight_exponent)) {
        // attach a light probe trail for the evidence record
        LimitVerdict v = *av;
        for (int k = 6; k <= 36; k += 6) {
            double lam = to0 ? std::ldexp(1.0, -k) : std::ldexp(1.0, k);
            double val;
            if (nf.kind() == NFunction::Kind::power)
                val = std::pow(lam, weight_exponent + nf.param_q() - 1.0 / s);
            else if (nf.kind() == NFunction::Kind::power_log_plus)
                val = std::pow(lam, weight_exponent + nf.param_q() - 1.0 / s) *
                      (1.0 + std::fabs(std::log(lam)));
            else
                val = std::pow(lam, weight_exponent) * alpha(nf, s, lam).value;
            v.probes.emplace_back(lam, val);
        }
        return v;
    }
    LimitVerdict v;
    v.direction = dir;
    std::vector<double> vals;
    for (int k = 1; k <= 60; ++k) {
        double lam = to0 ? std::ldexp(1.0, -k) : std::ldexp(1.0, k);
        SupResult a = alpha(nf, s, lam);
        double val = a.diverged ? kInf : std::pow(lam, weight_exponent) * a.value;
        v.probes.emplace_back(lam, val);
        vals.push_back(val);
    }
    double lv = 0;
    v.classification = classify_probes(vals, &lv);
    v.value = lv;
    return v;
}

// ---------------------------------------------------------------------------
// beta
// ---------------------------------------------------------------------------

std::optional<BetaResult> analytic_beta(const NFunction& nf, double s) {
    if (!nf.is_catalog()) return std::nullopt;
    BetaResult b;
    b.analytic = true;
    const double q = nf.param_q();
    auto zero = [&] {
        b.classification = LimitClass::evidence_zero;
        b.value = 0;
    };
    auto infinite = [&] { b.classification = LimitClass::evidence_infinite; };
    switch (nf.kind()) {
    case NFunction::Kind::power: {
        double d = 1.0 - s * q;
        if (std::fabs(d) <= 1e-12) {
            b.classification = LimitClass::evidence_positive;
            b.value = 1.0 / q;
        } else if (d > 0)
            zero();
        else
            infinite();
        break;
    }
    case NFunction::Kind::power_log_plus:
        (1.0 - s * q > 1e-12) ? zero() : infinite();
        break;
    case NFunction::Kind::power_log_minus:
        (1.0 - s * q >= -1e-12) ? zero() : infinite();
        break;
    case NFunction::Kind::llogl:
        zero();
        break;
    case NFunction::Kind::sampled:
        return std::nullopt;
    }
    return b;
}

namespace {

// Int_0^T A(z)/z dz by downward dyadic shells (mass sits at the top end).
double inner_beta_integral(const NFunction& nf, double T) {
    KahanSum total;
    double hi = T;
    for (int j = 0; j < 600; ++j) {
        double lo = hi / 2.0;
        double val, err;
        gk15([&](double z) { return nf(z) / z; }, lo, hi, val, err);
        total.add(val);
        if (val < 1e-14 * total.value() && j > 4) break;
        hi = lo;
    }
    return total.value();
}

} // namespace

BetaResult beta_limit(const NFunction& nf, double s) {
    if (!(s > 0 && s < 1)) fail(errc::schema, "beta_limit: s must lie in (0,1)");
    BetaResult out;
    std::vector<double> g;
    for (int k = 4; k <= 60; k += 4) {
        double eps = std::ldexp(1.0, -k);
        double T = std::pow(eps, -s);
        double val = eps * inner_beta_integral(nf, T);
        if (!finite(val)) val = kInf;
        out.probes.emplace_back(eps, val);
        g.push_back(val);
    }
    out.g_final = g.back();

    // Aitken delta-squared on the last three probes
    double beta_hat = g.back();
    {
        std::size_t n = g.size();
        double d1 = g[n - 1] - g[n - 2], d0 = g[n - 2] - g[n - 3];
        double denom = d1 - d0;
        if (std::fabs(denom) > 1e-300) {
            double cand = g[n - 1] - d1 * d1 / denom;
            if (finite(cand)) beta_hat = cand;
        }
    }

    bool inc = true, dec = true;
    std::size_t n = g.size();
    for (std::size_t i = n - kLimitTail + 1; i < n; ++i) {
        if (!(g[i] > g[i - 1])) inc = false;
        if (!(g[i] < g[i - 1])) dec = false;
    }
    double lo = kInf, hi = -kInf;
    for (std::size_t i = n - kLimitTail; i < n; ++i) {
        lo = std::min(lo, g[i]);
        hi = std::max(hi, g[i]);
    }
    if ((inc && g.back() > kInfThreshold) || g.back() == kInf) {
        out.classification = LimitClass::evidence_infinite;
        out.value = kInf;
    } else if (dec && (g.back() < kZeroThreshold || std::fabs(beta_hat) < kZeroThreshold)) {
        out.classification = LimitClass::evidence_zero;
        out.value = 0;
    } else if (hi > 0 && finite(hi) && (hi - lo) / hi < kSpreadThreshold) {
        out.classification = LimitClass::evidence_positive;
        out.value = beta_hat;
    } else {
        out.classification = LimitClass::inconclusive;
        out.value = beta_hat;
    }

    if (auto ab = analytic_beta(nf, s)) {
        ab->probes = out.probes;
        ab->g_final = out.g_final;
        if (ab->classification == LimitClass::evidence_positive &&
            out.classification == LimitClass::evidence_positive)
            ab->value = out.value; // keep the numeric refinement, analytic class
        return *ab;
    }
    return out;
}

} // namespace orlicz
