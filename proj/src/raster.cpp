#include "kakeya/raster.hpp"

#include <algorithm>
#include <cmath>

namespace kakeya {

double RasterSet::sample(const Vec2& p) const {
    const double h = grid_.h();
    const int ix = static_cast<int>(std::floor((p.x - grid_.origin.x) / h));
    const int iy = static_cast<int>(std::floor((p.y - grid_.origin.y) / h));
    if (!in_bounds(ix, iy)) return 0.0;
    return at(ix, iy);
}

double RasterSet::area() const {
    const double cell = grid_.h() * grid_.h();
    double total = 0.0;
    for (double c : coverage_) total += c;
    return total * cell;
}

void RasterSet::clamp01() {
    for (double& c : coverage_) c = std::clamp(c, 0.0, 1.0);
}

void RasterSet::max_with(const RasterSet& other) {
    for (size_t i = 0; i < coverage_.size(); ++i)
        coverage_[i] = std::max(coverage_[i], other.coverage_[i]);
}

}  // namespace kakeya
