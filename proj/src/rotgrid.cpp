#include "kakeya/rotgrid.hpp"

#include <algorithm>
#include <cmath>

namespace kakeya {

RotatedGrid::RotatedGrid(const RasterSet& f, const Direction& e, double delta, bool need_sum,
                         bool need_occ, double occ_threshold)
    : delta_(delta), has_sum_(need_sum), has_occ_(need_occ) {
    const GridSpec& g = f.grid();
    const double h = g.h();

    cols_per_tube_ = std::max(4, static_cast<int>(std::lround(delta / h)));
    hu_ = delta / cols_per_tube_;
    rows_per_unit_ = std::max(1, static_cast<int>(std::lround(1.0 / h)));
    hv_ = 1.0 / rows_per_unit_;

    // (u, v) extent of the raster window
    const Vec2 u_axis = e.unit();
    const Vec2 v_axis = e.perp();
    const Vec2 c0 = g.origin;
    const Vec2 c1 = g.max_corner();
    const Vec2 corners[4] = {c0, {c1.x, c0.y}, c1, {c0.x, c1.y}};
    double umin = corners[0].dot(u_axis), umax = umin;
    double vmin = corners[0].dot(v_axis), vmax = vmin;
    for (int i = 1; i < 4; ++i) {
        const double u = corners[i].dot(u_axis);
        const double v = corners[i].dot(v_axis);
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }

    tube0_ = static_cast<long>(std::floor(umin / delta));
    n_tubes_ = static_cast<int>(std::ceil(umax / delta) - tube0_);
    n_u_ = n_tubes_ * cols_per_tube_;
    v0_ = hv_ * std::floor(vmin / hv_);
    n_v_ = static_cast<int>(std::ceil((vmax - v0_) / hv_));

    const size_t stride = static_cast<size_t>(n_u_) + 1;
    if (need_sum) sum_prefix_.assign(stride * (n_v_ + 1), 0.0);
    if (need_occ) hole_prefix_.assign(stride * (n_v_ + 1), 0.0);

    const double u_base = tube0_ * delta;
    for (int r = 0; r < n_v_; ++r) {
        const double v = v0_ + (r + 0.5) * hv_;
        double* srow = need_sum ? &sum_prefix_[(r + 1) * stride] : nullptr;
        const double* sprev = need_sum ? &sum_prefix_[r * stride] : nullptr;
        double* hrow = need_occ ? &hole_prefix_[(r + 1) * stride] : nullptr;
        const double* hprev = need_occ ? &hole_prefix_[r * stride] : nullptr;
        double srun = 0.0, hrun = 0.0;
        for (int c = 0; c < n_u_; ++c) {
            const double u = u_base + (c + 0.5) * hu_;
            const Vec2 p = u_axis * u + v_axis * v;
            const double cov = f.sample(p);
            if (need_sum) {
                srun += cov;
                srow[c + 1] = sprev[c + 1] + srun;
            }
            if (need_occ) {
                if (cov < occ_threshold) hrun += 1.0;
                hrow[c + 1] = hprev[c + 1] + hrun;
            }
        }
        if (need_sum) srow[0] = 0.0;
        if (need_occ) hrow[0] = 0.0;
    }
}

double RotatedGrid::sum_rect(const std::vector<double>& prefix, int c0, int c1, int r0,
                             int r1) const {
    const size_t stride = static_cast<size_t>(n_u_) + 1;
    return prefix[(r1 + 1) * stride + (c1 + 1)] - prefix[r0 * stride + (c1 + 1)] -
           prefix[(r1 + 1) * stride + c0] + prefix[r0 * stride + c0];
}

double RotatedGrid::window_integral(long j, int r) const {
    if (!has_tube(j) || r < 0 || r + rows_per_unit_ > n_v_) return 0.0;
    const int c0 = static_cast<int>(j - tube0_) * cols_per_tube_;
    return sum_rect(sum_prefix_, c0, c0 + cols_per_tube_ - 1, r, r + rows_per_unit_ - 1) * hu_ *
           hv_;
}

bool RotatedGrid::window_inside(long j, int r) const {
    if (!has_tube(j) || r < 0 || r + rows_per_unit_ > n_v_) return false;
    const int c0 = static_cast<int>(j - tube0_) * cols_per_tube_;
    return sum_rect(hole_prefix_, c0, c0 + cols_per_tube_ - 1, r, r + rows_per_unit_ - 1) == 0.0;
}

std::pair<double, double> RotatedGrid::best_window(long j) const {
    if (!has_tube(j)) return {0.0, 0.0};
    double best = 0.0;
    int best_r = 0;
    const int last = offset_count() - 1;
    for (int r = 0; r <= last; ++r) {
        const double v = window_integral(j, r);
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    return {offset_at(best_r), best};
}

int RotatedGrid::first_inside_offset(long j) const {
    if (!has_tube(j)) return -1;
    const int last = offset_count() - 1;
    for (int r = 0; r <= last; ++r)
        if (window_inside(j, r)) return r;
    return -1;
}

}  // namespace kakeya
