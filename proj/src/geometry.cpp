#include "kakeya/geometry.hpp"

#include <algorithm>
#include <cstdio>

namespace kakeya {

namespace {

// Fixed-capacity polygon for clipping. A quad clipped by k half-planes has
// at most 4 + k vertices; 16 leaves headroom.
struct ClipPoly {
    std::array<Vec2, 16> pts;
    int n = 0;

    void push(const Vec2& p) { pts[n++] = p; }
};

// Keep the part of `poly` with dot(p, nrm) <= c.
void clip_halfplane(const ClipPoly& poly, const Vec2& nrm, double c, ClipPoly& out) {
    out.n = 0;
    if (poly.n == 0) return;
    for (int i = 0; i < poly.n; ++i) {
        const Vec2& a = poly.pts[i];
        const Vec2& b = poly.pts[(i + 1) % poly.n];
        const double da = a.dot(nrm) - c;
        const double db = b.dot(nrm) - c;
        if (da <= 0.0) {
            out.push(a);
            if (db > 0.0) {
                const double t = da / (da - db);
                out.push(a + (b - a) * t);
            }
        } else if (db <= 0.0) {
            const double t = da / (da - db);
            out.push(a + (b - a) * t);
        }
    }
}

double shoelace(const ClipPoly& poly) {
    double s = 0.0;
    for (int i = 0; i < poly.n; ++i) {
        const Vec2& a = poly.pts[i];
        const Vec2& b = poly.pts[(i + 1) % poly.n];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(s);
}

// Clip poly by the band lo <= dot(p, nrm) <= hi, in place via scratch.
void clip_band(ClipPoly& poly, ClipPoly& scratch, const Vec2& nrm, double lo, double hi) {
    clip_halfplane(poly, nrm, hi, scratch);
    clip_halfplane(scratch, {-nrm.x, -nrm.y}, -lo, poly);
}

}  // namespace

double chord_distance(const Direction& e, const Direction& xi) {
    return 2.0 * std::sin(0.5 * angle_distance(e, xi));
}

double angle_distance(const Direction& e, const Direction& xi) {
    const double pi = std::numbers::pi;
    double d = std::abs(e.angle() - xi.angle());
    return std::min(d, pi - d);
}

std::array<Vec2, 4> RectSpec::corners() const {
    const Vec2 u = tube.direction.unit();
    const Vec2 v = tube.direction.perp();
    const double u0 = tube.index * tube.delta;
    const double u1 = u0 + tube.delta;
    const double v0 = offset;
    const double v1 = offset + 1.0;
    return {u * u0 + v * v0, u * u1 + v * v0, u * u1 + v * v1, u * u0 + v * v1};
}

long tube_of(const Direction& e, double delta, const Vec2& x) {
    return static_cast<long>(std::floor(project(e, x) / delta));
}

double convex_quad_intersection_area(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b) {
    ClipPoly poly, scratch;
    for (const Vec2& p : a) poly.push(p);
    // Half-plane form of quad b: edge (b_i, b_{i+1}), inside = left of edge
    // for CCW order. Normalize orientation first via signed area.
    double signed_area = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Vec2& p = b[i];
        const Vec2& q = b[(i + 1) % 4];
        signed_area += p.x * q.y - q.x * p.y;
    }
    const double orient = signed_area >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < 4 && poly.n > 0; ++i) {
        const Vec2& p = b[i];
        const Vec2& q = b[(i + 1) % 4];
        // Outward normal so that "inside" is dot(x, nrm) <= c.
        Vec2 nrm{orient * (q.y - p.y), orient * (p.x - q.x)};
        clip_halfplane(poly, nrm, p.dot(nrm), scratch);
        std::swap(poly, scratch);
    }
    return shoelace(poly);
}

double rect_intersection_area(const RectSpec& r1, const RectSpec& r2) {
    const double area = convex_quad_intersection_area(r1.corners(), r2.corners());
    const double cap = std::min(r1.tube.delta, r2.tube.delta);
    return std::min(area, cap);
}

Interval projection_interval(const Direction& e, const RectSpec& rect) {
    const auto cs = rect.corners();
    double lo = project(e, cs[0]);
    double hi = lo;
    for (int i = 1; i < 4; ++i) {
        const double p = project(e, cs[i]);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return {lo, hi};
}

RasterSet rasterize_convex_polygon(const std::vector<Vec2>& poly, const GridSpec& g) {
    RasterSet out(g);
    add_convex_polygon_coverage(poly, 1.0, out);
    out.clamp01();
    return out;
}

void add_convex_polygon_coverage(const std::vector<Vec2>& poly, double scale, RasterSet& acc) {
    if (poly.size() < 3) return;
    const GridSpec& g = acc.grid();
    const double h = g.h();
    const int n = g.cells_per_side;

    double xmin = poly[0].x, xmax = poly[0].x, ymin = poly[0].y, ymax = poly[0].y;
    for (const Vec2& p : poly) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    int iy0 = std::max(0, static_cast<int>(std::floor((ymin - g.origin.y) / h)));
    int iy1 = std::min(n - 1, static_cast<int>(std::floor((ymax - g.origin.y) / h)));
    int ix0 = std::max(0, static_cast<int>(std::floor((xmin - g.origin.x) / h)));
    int ix1 = std::min(n - 1, static_cast<int>(std::floor((xmax - g.origin.x) / h)));

    const double inv_cell = 1.0 / (h * h);
    ClipPoly base, row, scratch;
    for (const Vec2& p : poly) base.push(p);

    for (int iy = iy0; iy <= iy1; ++iy) {
        row = base;
        clip_band(row, scratch, {0.0, 1.0}, g.origin.y + iy * h, g.origin.y + (iy + 1) * h);
        if (row.n == 0) continue;
        // x-extent of the row polygon bounds the cells to visit
        double rxmin = row.pts[0].x, rxmax = row.pts[0].x;
        for (int i = 1; i < row.n; ++i) {
            rxmin = std::min(rxmin, row.pts[i].x);
            rxmax = std::max(rxmax, row.pts[i].x);
        }
        int jx0 = std::max(ix0, static_cast<int>(std::floor((rxmin - g.origin.x) / h)));
        int jx1 = std::min(ix1, static_cast<int>(std::floor((rxmax - g.origin.x) / h)));
        ClipPoly cell, cscratch;
        for (int ix = jx0; ix <= jx1; ++ix) {
            cell = row;
            clip_band(cell, cscratch, {1.0, 0.0}, g.origin.x + ix * h, g.origin.x + (ix + 1) * h);
            if (cell.n == 0) continue;
            acc.at(ix, iy) += scale * shoelace(cell) * inv_cell;
        }
    }
}

RasterSet rasterize_rect(const RectSpec& rect, const GridSpec& g) {
    const double delta = rect.tube.delta;
    if (g.h() > delta / 4.0 * (1.0 + 1e-12)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "rasterize_rect: grid too coarse (h=%.6g, need h <= delta/4 = %.6g)", g.h(),
                      delta / 4.0);
        throw std::invalid_argument(buf);
    }
    const auto cs = rect.corners();
    return rasterize_convex_polygon({cs.begin(), cs.end()}, g);
}

}  // namespace kakeya
