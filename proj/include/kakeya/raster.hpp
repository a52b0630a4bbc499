#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kakeya/common.hpp"

namespace kakeya {

// Uniform axis-aligned grid of square cells. Cell (ix,iy) covers
// [origin.x + ix*h, origin.x + (ix+1)*h) x [origin.y + iy*h, ...).
struct GridSpec {
    Vec2 origin{0.0, 0.0};
    double side = 1.0;
    int cells_per_side = 1;

    double h() const { return side / cells_per_side; }

    Vec2 cell_center(int ix, int iy) const {
        const double hh = h();
        return {origin.x + (ix + 0.5) * hh, origin.y + (iy + 0.5) * hh};
    }

    Vec2 max_corner() const { return {origin.x + side, origin.y + side}; }

    bool operator==(const GridSpec& o) const {
        return origin.x == o.origin.x && origin.y == o.origin.y && side == o.side &&
               cells_per_side == o.cells_per_side;
    }
};

// A compact set (or density) represented by per-cell coverage fractions in
// [0,1]. Area is h^2 * sum(coverage).
class RasterSet {
  public:
    RasterSet() = default;
    explicit RasterSet(const GridSpec& grid)
        : grid_(grid),
          coverage_(static_cast<size_t>(grid.cells_per_side) * grid.cells_per_side, 0.0) {}

    const GridSpec& grid() const { return grid_; }
    int n() const { return grid_.cells_per_side; }

    double& at(int ix, int iy) { return coverage_[static_cast<size_t>(iy) * n() + ix]; }
    double at(int ix, int iy) const { return coverage_[static_cast<size_t>(iy) * n() + ix]; }

    const std::vector<double>& coverage() const { return coverage_; }
    std::vector<double>& coverage() { return coverage_; }

    bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < n() && iy >= 0 && iy < n(); }

    // Coverage of the cell containing p; 0 outside the extent.
    double sample(const Vec2& p) const;

    double area() const;

    // Total coverage clamped into [0,1] cell by cell.
    void clamp01();

    // max(this, other) cell by cell; grids must match.
    void max_with(const RasterSet& other);

    bool empty() const {
        for (double c : coverage_)
            if (c > 0.0) return false;
        return true;
    }

  private:
    GridSpec grid_;
    std::vector<double> coverage_;
};

}  // namespace kakeya
