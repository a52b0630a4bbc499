#pragma once

#include <map>
#include <vector>

#include "kakeya/common.hpp"

namespace kakeya {

// Nonnegative piecewise-constant measure on the uniform grid
// [j*delta, (j+1)*delta), j = lo .. lo + weights.size() - 1. Mass inside a
// cell is spread uniformly, so the measure of any interval is an exact
// cell-overlap sum.
class StepMeasure1D {
  public:
    StepMeasure1D() = default;
    StepMeasure1D(double delta, long lo, std::vector<double> weights)
        : delta_(delta), lo_(lo), weights_(std::move(weights)) {}

    double delta() const { return delta_; }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(weights_.size()); }  // one past last
    const std::vector<double>& weights() const { return weights_; }

    double cell_mass(long j) const {
        if (j < lo_ || j >= hi()) return 0.0;
        return weights_[static_cast<size_t>(j - lo_)];
    }

    double total_mass() const;
    // mu([a,b)) with fractional cell overlap.
    double interval_mass(double a, double b) const;

    // Resample onto a grid of width `new_delta` (cell masses by exact overlap).
    StepMeasure1D resample(double new_delta) const;

    void scale(double factor);
    // Drop zero cells at both ends.
    StepMeasure1D trimmed() const;

    bool operator==(const StepMeasure1D& o) const {
        return delta_ == o.delta_ && trimmed_equal(o);
    }

  private:
    bool trimmed_equal(const StepMeasure1D& o) const;

    double delta_ = 1.0;
    long lo_ = 0;
    std::vector<double> weights_;
};

// A finite union of grid cells [j*delta, (j+1)*delta) on the line.
struct CompactGridSet1D {
    double delta = 1.0;
    std::vector<long> occupied;  // sorted, unique

    void normalize();
    bool empty() const { return occupied.empty(); }
};

// Snap a union of intervals to the grid: a cell is occupied when at least
// half of it is covered.
CompactGridSet1D snap_intervals_to_grid(const std::vector<std::pair<double, double>>& intervals,
                                        double delta);

// Bottom-up dyadic Frostman construction: start each occupied cell at
// delta^s, then ascend dyadic levels scaling any violating block down to
// length^s. The result satisfies mu(I) <= len(I)^s exactly on aligned
// dyadic intervals (factor <= 4 on arbitrary intervals) and its total mass
// equals the dyadic s-content of the set.
StepMeasure1D frostman_build_1d(const CompactGridSet1D& set, double s);

// Max over grid-aligned intervals [p*delta, q*delta) of mu(I) / len(I)^s.
double growth_ratio(const StepMeasure1D& mu, double s);

// Exact minimal cost sum len(I_k)^s over covers of the set by grid-aligned
// intervals (O(n^2) dynamic program; supports up to 2^14 cells).
double interval_content(const CompactGridSet1D& set, double s);

// Dyadic-to-arbitrary interval slack of the construction.
inline constexpr double kDyadicSlack = 4.0;

// Nonnegative measure on direction space [0, pi), n_cells uniform angular
// cells, with the ball growth sigma(B(e,r)) <= r^(1-t) enforced on grid
// balls in the angular metric.
struct CircleMeasure {
    int n_cells = 0;
    double t = 0.0;  // growth exponent is 1 - t
    std::vector<double> mass;

    double cell_width() const { return std::numbers::pi / n_cells; }
    double cell_center(int j) const { return (j + 0.5) * cell_width(); }
    double total_mass() const;
    // Mass of the grid ball: cells whose center lies within angular
    // distance r of angle theta (wrapping at pi).
    double ball_mass(double theta, double r) const;
};

struct CircleArcSet {
    int n_cells = 0;
    std::vector<int> occupied;  // sorted, unique, in [0, n_cells)
};

// Same dyadic construction on the angle line with wraparound, exponent
// 1 - t, followed by an exact grid-ball enforcement pass.
CircleMeasure circle_frostman(const CircleArcSet& arcs, double t);

// Max over grid balls (all centers, radii k*width) of sigma(B)/r^(1-t).
double ball_growth_ratio(const CircleMeasure& sigma, double t);

struct RieszResult {
    double value = 0.0;
    bool may_diverge = false;  // set when t >= s
};

// sup over support cells xi of sum_e sigma(cell_e) * dist(e, xi)^(s-1),
// with chord distance between cell centers and the self-cell term floored
// at the cell width.
RieszResult riesz_integral(const CircleMeasure& sigma, double s);

}  // namespace kakeya
