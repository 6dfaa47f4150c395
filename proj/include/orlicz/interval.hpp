#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

// Open interval (lo, hi); endpoints may be +-inf.
struct Interval {
    double lo = 0, hi = 0;
    double length() const { return hi - lo; }
    bool contains(double x) const { return x > lo && x < hi; }
    bool bounded() const { return finite(lo) && finite(hi); }
};

// Sorted union of pairwise disjoint open intervals.
class IntervalUnion {
  public:
    IntervalUnion() = default;

    explicit IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {
        normalize();
    }

    static IntervalUnion single(double lo, double hi) { return IntervalUnion({{lo, hi}}); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    bool contains(double x) const {
        for (const auto& p : parts_)
            if (p.contains(x)) return true;
        return false;
    }

    // distance to the complement (0 outside the closure)
    double dist_boundary(double x) const {
        for (const auto& p : parts_)
            if (p.contains(x)) return std::min(x - p.lo, p.hi - x);
        return 0.0;
    }

    double measure() const {
        double m = 0;
        for (const auto& p : parts_) m += p.length();
        return m;
    }

    // half-length of the longest component == sup of inradii
    double max_half_length() const {
        double m = 0;
        for (const auto& p : parts_) m = std::max(m, p.length() / 2.0);
        return m;
    }

    bool bounded() const {
        for (const auto& p : parts_)
            if (!p.bounded()) return false;
        return true;
    }

    double lo() const { return parts_.empty() ? 0 : parts_.front().lo; }
    double hi() const { return parts_.empty() ? 0 : parts_.back().hi; }

    // {c + k*t : t in U}
    IntervalUnion affine(double c, double k) const {
        std::vector<Interval> out;
        out.reserve(parts_.size());
        for (const auto& p : parts_) {
            double a = c + k * p.lo, b = c + k * p.hi;
            if (k < 0) std::swap(a, b);
            out.push_back({a, b});
        }
        return IntervalUnion(std::move(out));
    }

  private:
    void normalize() {
        std::sort(parts_.begin(), parts_.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (auto& p : parts_)
            if (!(p.lo < p.hi)) fail(errc::schema, "interval with lo >= hi");
        for (std::size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i].lo < parts_[i - 1].hi)
                fail(errc::schema, "overlapping intervals in union");
    }

    std::vector<Interval> parts_;
};

} // namespace orlicz
