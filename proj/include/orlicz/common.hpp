#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool finite(double x) { return std::isfinite(x); }

// ---------------------------------------------------------------------------
// Error codes, mapped to CLI exit codes by the front end.
// ---------------------------------------------------------------------------

enum class errc {
    schema,               // malformed problem spec
    contradiction,        // two fired classifier rules disagree
    invalid_nfunction,    // gauge failed validation (non-finite, non-convex samples, ...)
    degenerate_trial,     // all optimizer restarts collapsed to f == 0
    not_delta2,           // operation requires a doubling gauge
    degenerate_direction, // line section not closed-form for this shape/direction
    construction,         // invalid cutoff/trial construction (eps >= inradius, ...)
    quadrature,           // inner quadrature failure
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64). Randomness only seeds optimizer restarts and
// Monte-Carlo measure estimates; identical seeds give identical streams on
// every platform, unlike <random> distributions.
// ---------------------------------------------------------------------------

class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // log-uniform over [lo, hi], lo > 0
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

  private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Deterministic reduction: pairwise summation over a fixed-order buffer.
// ---------------------------------------------------------------------------

inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

// Compensated accumulator for long sequential reductions.
struct KahanSum {
    double sum = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace orlicz
