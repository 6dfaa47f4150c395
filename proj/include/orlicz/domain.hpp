#pragma once

#include <array>
#include <string>
#include <vector>

#include "orlicz/common.hpp"
#include "orlicz/interval.hpp"

namespace orlicz {

using Point = std::vector<double>;

/// Piecewise-linear graph R -> R with finitely many breakpoints and linear
/// extensions beyond the first/last one.
struct PiecewiseLinear {
    std::vector<double> xs, ys; // breakpoints, xs strictly increasing
    double slope_left = 0, slope_right = 0;

    double operator()(double x) const;
    double lip() const;
};

/// Geometric region from the catalog. All queries are exact closed forms.
class Domain {
  public:
    enum class Shape {
        interval_union,       // N = 1
        box,                  // N-dim product of open intervals
        ball,                 // open ball
        annulus_union,        // center + disjoint (r_in, r_out) rings
        punctured_space,      // R^N minus a point
        complement_of_box,    // R^N minus a closed box
        half_space_above_graph, // N = 2: { (x,y) : y > Phi(x) }, Phi piecewise linear
        strip_union,          // N = 2: I x R with I an interval union
        lattice_holes,        // N = 2: R^2 minus closed balls of radius rho at Z^2
    };

    static Domain interval_union(IntervalUnion iu);
    static Domain interval(double lo, double hi) { return interval_union(IntervalUnion::single(lo, hi)); }
    static Domain box(std::vector<double> lo, std::vector<double> hi);
    static Domain ball(Point center, double radius);
    static Domain annulus_union(Point center, std::vector<std::pair<double, double>> rings);
    static Domain punctured_space(Point point);
    static Domain complement_of_box(std::vector<double> lo, std::vector<double> hi);
    static Domain half_space_above_graph(PiecewiseLinear graph);
    static Domain strip_union(IntervalUnion cross_section);
    static Domain lattice_holes(double hole_radius);

    Shape shape() const { return shape_; }
    int dim() const { return dim_; }
    bool bounded() const;
    double diameter() const; // +inf when unbounded
    std::string name() const;

    const IntervalUnion& intervals() const { return iu_; }
    const std::vector<double>& box_lo() const { return lo_; }
    const std::vector<double>& box_hi() const { return hi_; }
    const Point& center() const { return center_; }
    double radius() const { return radius_; }
    const std::vector<std::pair<double, double>>& rings() const { return rings_; }
    const PiecewiseLinear& graph() const { return graph_; }
    double hole_radius() const { return hole_radius_; }

    bool membership(const Point& x) const;
    /// delta_D(x) = dist(x, complement); 0 outside the closure.
    double dist_boundary(const Point& x) const;

  private:
    Shape shape_ = Shape::interval_union;
    int dim_ = 1;
    IntervalUnion iu_;
    std::vector<double> lo_, hi_;
    Point center_;
    double radius_ = 0;
    std::vector<std::pair<double, double>> rings_;
    PiecewiseLinear graph_;
    double hole_radius_ = 0;
};

/// 1-D trace of D along x + t*omega; base lies in omega^perp.
struct LineSection {
    Point base;
    Point direction;
    IntervalUnion section;
};

/// Finite-ball constant BC(D): supremal inradius, exact per shape; +inf when D
/// contains arbitrarily large balls.
double ball_condition(const Domain& D);

/// Exact line section {t : x + t*omega in D}. Throws degenerate_direction when
/// the shape/direction pair has no closed form (lattice holes).
LineSection line_section(const Domain& D, const Point& x, const Point& omega);

struct MeasureEstimate {
    double lower_bound = 0; // MC estimate of inf_x L^N(B(x,R) cap D^c)
    double std_error = 0;
    long x_samples = 0;
    long y_samples = 0;
};

/// Monte-Carlo evidence for the Theorem-1.10(2) hypothesis.
MeasureEstimate exterior_measure_lb(const Domain& D, double R, long n_samples,
                                    std::uint64_t seed = 0);

} // namespace orlicz
