#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "kakeya/geometry.hpp"
#include "kakeya/raster.hpp"

namespace kakeya {

// --- Set recipes ------------------------------------------------------

struct SquareRecipe {
    double side = 1.0;  // axis-aligned [0, side]^2
};

struct DiscRecipe {
    double radius = 0.5;  // centered at (0.5, 0.5)
};

// Stage-`depth` Cantor set C (keep-ratio `ratio` at both ends) crossed with
// a unit segment: segments run perpendicular to `direction`, and the
// projection onto `direction` is C. Dimension dial: s = log 2 / log(1/ratio).
struct CantorProductRecipe {
    double ratio = 1.0 / 3.0;
    int depth = 4;
    double direction = 0.0;  // angle in [0, pi)
};

// Bisection-and-overlap rearrangement of 2^depth triangles cut from the
// base-1 height-1 triangle; segment directions span a ~45 degree sector.
struct PerronTreeRecipe {
    int depth = 4;
    double overlap = 0.0;  // 0 = depth-dependent default
};

struct CustomRecipe {
    std::string path;  // PGM written by this library
};

struct SetRecipe;

// Rotated copies of a polygon-backed recipe about (0.5, 0.5).
struct UnionRotationsRecipe {
    std::shared_ptr<SetRecipe> base;
    std::vector<double> angles;
};

using RecipeVariant = std::variant<SquareRecipe, DiscRecipe, CantorProductRecipe,
                                   PerronTreeRecipe, UnionRotationsRecipe, CustomRecipe>;

struct SetRecipe {
    RecipeVariant value;
};

// Stage-k Cantor intervals on [0,1]; 2^k intervals of length ratio^k.
std::vector<Interval> cantor_stage_intervals(double ratio, int depth);

// The convex polygons whose union realizes the recipe (all recipes except
// Custom). Perron-tree triangles overlap by construction.
std::vector<std::vector<Vec2>> recipe_polygons(const SetRecipe& recipe);

// Deterministic anti-aliased raster of the recipe on g. Coverage is
// computed on a sub-grid (subsamples^2 point samples per cell) so unions of
// overlapping polygons need no special casing.
RasterSet generate(const SetRecipe& recipe, const GridSpec& g, int subsamples = 8);

// Closed delta-dilation: coverage ramp of the Euclidean distance to the
// occupied region (coverage >= 1/2), then max with the input so K is never
// lost. Requires delta >= 2h.
RasterSet neighborhood(const RasterSet& k, double delta);

// Exact squared-Euclidean distance (in cells) to the nearest seed cell.
std::vector<double> distance_transform_sq(const std::vector<uint8_t>& seed, int nx, int ny);

// area(K(delta)) of PerronTree(depth) for each depth, at fixed delta and grid.
std::vector<double> perron_area_trend(const std::vector<int>& depths, double delta,
                                      const GridSpec& g);

std::string recipe_name(const SetRecipe& recipe);

}  // namespace kakeya
