#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "kakeya/common.hpp"
#include "kakeya/raster.hpp"

namespace kakeya {

// A direction of the plane, identified with its antipode: angles live in
// [0, pi). The unit vector is e = (cos theta, sin theta).
class Direction {
  public:
    Direction() : theta_(0.0) {}
    explicit Direction(double angle) : theta_(normalize(angle)) {}

    double angle() const { return theta_; }
    Vec2 unit() const { return {std::cos(theta_), std::sin(theta_)}; }
    // Unit vector perpendicular to e (rotation by +pi/2).
    Vec2 perp() const { return {-std::sin(theta_), std::cos(theta_)}; }

    bool operator==(const Direction& o) const { return theta_ == o.theta_; }

    static double normalize(double angle) {
        const double pi = std::numbers::pi;
        double a = std::fmod(angle, pi);
        if (a < 0.0) a += pi;
        if (a >= pi) a -= pi;  // fmod rounding at the seam
        return a;
    }

  private:
    double theta_;
};

// |e - xi| as chord distance on direction space: min over the antipode,
// i.e. 2*sin(gap/2) with gap = angular distance in [0, pi/2].
double chord_distance(const Direction& e, const Direction& xi);

// Angular distance min(|de|, pi - |de|) in [0, pi/2].
double angle_distance(const Direction& e, const Direction& xi);

// The slab rho_e^{-1}[j*delta, (j+1)*delta): a tube of width delta whose
// long axis runs perpendicular to e.
struct TubeId {
    Direction direction;
    double delta = 0.0;
    long index = 0;
};

// A closed delta x 1 rectangle inside its tube: width delta along e,
// length 1 along e-perp starting at `offset`.
struct RectSpec {
    TubeId tube;
    double offset = 0.0;

    // Corner order: (uLow,vLow), (uHigh,vLow), (uHigh,vHigh), (uLow,vHigh)
    // in the (e, e-perp) frame. Counterclockwise.
    std::array<Vec2, 4> corners() const;
};

// Orthogonal projection onto the line spanned by e.
inline double project(const Direction& e, const Vec2& x) { return x.dot(e.unit()); }

// Index j of the tube slab [j*delta, (j+1)*delta) containing x.
long tube_of(const Direction& e, double delta, const Vec2& x);

// Exact area of the intersection of two convex quadrilaterals
// (Sutherland-Hodgman clip + shoelace).
double convex_quad_intersection_area(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b);

// Exact area of R1 cap R2; 0 when disjoint. Always in [0, min(delta1, delta2)].
double rect_intersection_area(const RectSpec& r1, const RectSpec& r2);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// Exact projection rho_e(R) = [min, max] over the four rectangle vertices.
Interval projection_interval(const Direction& e, const RectSpec& rect);

// Per-cell coverage fractions of R on g, computed by exact polygon
// clipping. Requires g.h() <= delta/4.
RasterSet rasterize_rect(const RectSpec& rect, const GridSpec& g);

// Exact per-cell coverage of an arbitrary convex polygon (no resolution
// precondition); clips the polygon row band by row band.
RasterSet rasterize_convex_polygon(const std::vector<Vec2>& poly, const GridSpec& g);

// acc += scale * coverage(poly) without allocating a fresh raster.
void add_convex_polygon_coverage(const std::vector<Vec2>& poly, double scale, RasterSet& acc);

}  // namespace kakeya
