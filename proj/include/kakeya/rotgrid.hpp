#pragma once

#include <cstdint>
#include <vector>

#include "kakeya/geometry.hpp"
#include "kakeya/raster.hpp"

namespace kakeya {

// Raster resampled into the (e, e-perp) frame on a lattice aligned with the
// delta-tube boundaries: each tube is an exact block of `cols_per_tube`
// columns, and a unit-length window is an exact block of `rows_per_unit`
// rows. For axis directions on dyadic grids the samples coincide with the
// source cells, so window sums are exact integrals.
class RotatedGrid {
  public:
    // `need_sum` builds prefix sums of the sampled coverage; `need_occ`
    // builds prefix counts of holes (coverage < occ_threshold).
    RotatedGrid(const RasterSet& f, const Direction& e, double delta, bool need_sum, bool need_occ,
                double occ_threshold = 0.5);

    long first_tube() const { return tube0_; }
    long end_tube() const { return tube0_ + n_tubes_; }
    bool has_tube(long j) const { return j >= tube0_ && j < end_tube(); }

    double hu() const { return hu_; }
    double hv() const { return hv_; }
    int offset_count() const { return n_v_ - rows_per_unit_ + 1; }
    double offset_at(int r) const { return v0_ + r * hv_; }

    // Integral of f over the rectangle (tube j, offset row r): cell-area *
    // window sum of sampled coverage.
    double window_integral(long j, int r) const;

    // True when every sample in the rectangle window has coverage >=
    // occ_threshold (requires need_occ).
    bool window_inside(long j, int r) const;

    // Largest window integral over all offsets; smallest maximizing offset.
    // Returns {offset, value}; {0, 0} for tubes outside the grid.
    std::pair<double, double> best_window(long j) const;

    // Smallest offset row whose window is fully inside; -1 if none.
    int first_inside_offset(long j) const;

  private:
    double sum_rect(const std::vector<double>& prefix, int c0, int c1, int r0, int r1) const;

    double delta_;
    double hu_, hv_;
    int cols_per_tube_ = 0, rows_per_unit_ = 0;
    long tube0_ = 0;
    int n_tubes_ = 0;
    int n_u_ = 0, n_v_ = 0;
    double v0_ = 0.0;
    std::vector<double> sum_prefix_;   // (n_v+1) x (n_u+1)
    std::vector<double> hole_prefix_;  // same layout, counts of holes
    bool has_sum_ = false, has_occ_ = false;
};

}  // namespace kakeya
