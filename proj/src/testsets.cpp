#include "kakeya/testsets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "kakeya/io.hpp"

namespace kakeya {

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 rotate_about(const Vec2& p, const Vec2& c, double angle) {
    const double ca = std::cos(angle), sa = std::sin(angle);
    const Vec2 d = p - c;
    return {c.x + ca * d.x - sa * d.y, c.y + sa * d.x + ca * d.y};
}

// Smallest geometric feature of the recipe; the grid must resolve it.
double min_feature(const SetRecipe& recipe) {
    return std::visit(
        [](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SquareRecipe>) {
                return r.side;
            } else if constexpr (std::is_same_v<T, DiscRecipe>) {
                return r.radius;
            } else if constexpr (std::is_same_v<T, CantorProductRecipe>) {
                return std::pow(r.ratio, r.depth);
            } else if constexpr (std::is_same_v<T, PerronTreeRecipe>) {
                return std::ldexp(1.0, -r.depth);
            } else if constexpr (std::is_same_v<T, UnionRotationsRecipe>) {
                return min_feature(*r.base);
            } else {
                return 0.0;  // Custom: resolution fixed by the file
            }
        },
        recipe.value);
}

void validate_recipe(const SetRecipe& recipe) {
    std::visit(
        [](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SquareRecipe>) {
                if (r.side <= 0.0) throw std::invalid_argument("square side must be positive");
            } else if constexpr (std::is_same_v<T, DiscRecipe>) {
                if (r.radius <= 0.0) throw std::invalid_argument("disc radius must be positive");
            } else if constexpr (std::is_same_v<T, CantorProductRecipe>) {
                if (r.ratio <= 0.0 || r.ratio >= 0.5)
                    throw std::invalid_argument("cantor ratio must lie in (0, 0.5)");
                if (r.depth < 0 || r.depth > 12)
                    throw std::invalid_argument("cantor depth must lie in [0, 12]");
            } else if constexpr (std::is_same_v<T, PerronTreeRecipe>) {
                if (r.depth < 0 || r.depth > 12)
                    throw std::invalid_argument("perron depth must lie in [0, 12]");
                if (r.overlap != 0.0 && (r.overlap <= 0.5 || r.overlap >= 1.0))
                    throw std::invalid_argument("perron overlap must lie in (0.5, 1)");
            } else if constexpr (std::is_same_v<T, UnionRotationsRecipe>) {
                if (!r.base) throw std::invalid_argument("union base recipe missing");
                if (r.angles.empty()) throw std::invalid_argument("union angle list empty");
                validate_recipe(*r.base);
            }
        },
        recipe.value);
}

std::vector<Vec2> rect_poly(double x0, double x1, double y0, double y1) {
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Bottom-up pairwise merging of the 2^depth elementary triangles (bases
// tiling [0,1], shared apex (0.5, 1)). Each merge first translates the
// right group so the enclosing-triangle bases become adjacent (the two
// enclosures are then the halves of a triangle T similar to their dyadic
// ancestor), then slides it further left by (1-alpha) * base(T); the
// union's core fits a copy of T scaled by alpha, anchored at the left base
// corner. Leaf translations accumulate; the emitted polygons are rigidly
// translated originals.
std::vector<std::vector<Vec2>> perron_polygons(int depth, double overlap) {
    const int n = 1 << depth;
    const double w = 1.0 / n;
    const double alpha = overlap > 0.0 ? overlap : 0.9;

    struct Group {
        double base_lo, base_hi;
        Vec2 apex;
        int leaf_lo, leaf_hi;  // leaf index range [lo, hi)
    };
    std::vector<double> shift(static_cast<size_t>(n), 0.0);
    std::vector<Group> groups;
    groups.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        groups.push_back({i * w, (i + 1) * w, {0.5, 1.0}, i, i + 1});

    while (groups.size() > 1) {
        std::vector<Group> merged;
        merged.reserve(groups.size() / 2);
        for (size_t g = 0; g + 1 < groups.size(); g += 2) {
            const Group& left = groups[g];
            Group right = groups[g + 1];
            const double adjacency = left.base_hi - right.base_lo;
            const double width = (left.base_hi - left.base_lo) + (right.base_hi - right.base_lo);
            const double slide = adjacency - (1.0 - alpha) * width;
            for (int i = right.leaf_lo; i < right.leaf_hi; ++i)
                shift[static_cast<size_t>(i)] += slide;
            right.base_lo += slide;
            right.base_hi += slide;
            right.apex.x += slide;

            Group out;
            out.leaf_lo = left.leaf_lo;
            out.leaf_hi = right.leaf_hi;
            out.base_lo = left.base_lo;
            out.base_hi = left.base_lo + alpha * width;
            // apex of the ancestor triangle scaled by alpha about the left corner
            out.apex = {left.base_lo + alpha * (left.apex.x - left.base_lo),
                        alpha * left.apex.y};
            merged.push_back(out);
        }
        if (groups.size() % 2 == 1) merged.push_back(groups.back());
        groups = std::move(merged);
    }

    std::vector<std::vector<Vec2>> polys;
    polys.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = shift[static_cast<size_t>(i)];
        polys.push_back({{i * w + t, 0.0}, {(i + 1) * w + t, 0.0}, {0.5 + t, 1.0}});
    }
    return polys;
}

struct BitGrid {
    int nx = 0, ny = 0, words_per_row = 0;
    std::vector<uint64_t> bits;

    BitGrid(int nx_, int ny_) : nx(nx_), ny(ny_), words_per_row((nx_ + 63) / 64) {
        bits.assign(static_cast<size_t>(words_per_row) * ny, 0);
    }

    void set_range(int row, int a, int b) {  // set bits [a, b] inclusive
        if (b < 0 || a >= nx) return;
        a = std::max(a, 0);
        b = std::min(b, nx - 1);
        if (a > b) return;
        uint64_t* w = bits.data() + static_cast<size_t>(row) * words_per_row;
        const int wa = a / 64, wb = b / 64;
        const uint64_t ma = ~0ULL << (a % 64);
        const uint64_t mb = ~0ULL >> (63 - b % 64);
        if (wa == wb) {
            w[wa] |= ma & mb;
        } else {
            w[wa] |= ma;
            for (int k = wa + 1; k < wb; ++k) w[k] |= ~0ULL;
            w[wb] |= mb;
        }
    }

    int count_range(int row, int a, int b) const {  // popcount of [a, b]
        if (b < 0 || a >= nx) return 0;
        a = std::max(a, 0);
        b = std::min(b, nx - 1);
        if (a > b) return 0;
        const uint64_t* w = bits.data() + static_cast<size_t>(row) * words_per_row;
        const int wa = a / 64, wb = b / 64;
        const uint64_t ma = ~0ULL << (a % 64);
        const uint64_t mb = ~0ULL >> (63 - b % 64);
        if (wa == wb) return std::popcount(w[wa] & ma & mb);
        int c = std::popcount(w[wa] & ma) + std::popcount(w[wb] & mb);
        for (int k = wa + 1; k < wb; ++k) c += std::popcount(w[k]);
        return c;
    }
};

// Scanline-fill a convex polygon into the sub-grid: a bit is set when the
// subcell center lies inside.
void fill_convex(BitGrid& bg, const std::vector<Vec2>& poly, const GridSpec& g, int sub) {
    const double hs = g.h() / sub;
    const int nys = g.cells_per_side * sub;
    double ymin = poly[0].y, ymax = poly[0].y;
    for (const Vec2& p : poly) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    int r0 = std::max(0, static_cast<int>(std::ceil((ymin - g.origin.y) / hs - 0.5)));
    int r1 = std::min(nys - 1, static_cast<int>(std::floor((ymax - g.origin.y) / hs - 0.5)));
    const size_t m = poly.size();
    for (int r = r0; r <= r1; ++r) {
        const double y = g.origin.y + (r + 0.5) * hs;
        double xlo = 0.0, xhi = 0.0;
        bool any = false;
        for (size_t i = 0; i < m; ++i) {
            const Vec2& p = poly[i];
            const Vec2& q = poly[(i + 1) % m];
            if ((p.y <= y && q.y > y) || (q.y <= y && p.y > y)) {
                const double x = p.x + (q.x - p.x) * (y - p.y) / (q.y - p.y);
                if (!any) {
                    xlo = xhi = x;
                    any = true;
                } else {
                    xlo = std::min(xlo, x);
                    xhi = std::max(xhi, x);
                }
            }
        }
        if (!any) continue;
        const int a = static_cast<int>(std::ceil((xlo - g.origin.x) / hs - 0.5));
        const int b = static_cast<int>(std::floor((xhi - g.origin.x) / hs - 0.5));
        bg.set_range(r, a, b);
    }
}

}  // namespace

std::vector<Interval> cantor_stage_intervals(double ratio, int depth) {
    std::vector<Interval> cur{{0.0, 1.0}};
    for (int k = 0; k < depth; ++k) {
        std::vector<Interval> next;
        next.reserve(cur.size() * 2);
        for (const Interval& iv : cur) {
            const double len = iv.length();
            next.push_back({iv.lo, iv.lo + ratio * len});
            next.push_back({iv.hi - ratio * len, iv.hi});
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::vector<Vec2>> recipe_polygons(const SetRecipe& recipe) {
    validate_recipe(recipe);
    return std::visit(
        [](const auto& r) -> std::vector<std::vector<Vec2>> {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SquareRecipe>) {
                return {rect_poly(0.0, r.side, 0.0, r.side)};
            } else if constexpr (std::is_same_v<T, DiscRecipe>) {
                // inscribed 1024-gon; relative area deficit ~2.5e-5
                const int m = 1024;
                std::vector<Vec2> poly;
                poly.reserve(m);
                for (int i = 0; i < m; ++i) {
                    const double a = 2.0 * kPi * i / m;
                    poly.push_back({0.5 + r.radius * std::cos(a), 0.5 + r.radius * std::sin(a)});
                }
                return {poly};
            } else if constexpr (std::is_same_v<T, CantorProductRecipe>) {
                std::vector<std::vector<Vec2>> polys;
                for (const Interval& iv : cantor_stage_intervals(r.ratio, r.depth))
                    polys.push_back(rect_poly(iv.lo, iv.hi, 0.0, 1.0));
                if (r.direction != 0.0) {
                    const Vec2 c{0.5, 0.5};
                    for (auto& poly : polys)
                        for (Vec2& p : poly) p = rotate_about(p, c, r.direction);
                }
                return polys;
            } else if constexpr (std::is_same_v<T, PerronTreeRecipe>) {
                return perron_polygons(r.depth, r.overlap);
            } else if constexpr (std::is_same_v<T, UnionRotationsRecipe>) {
                auto base = recipe_polygons(*r.base);
                std::vector<std::vector<Vec2>> polys;
                polys.reserve(base.size() * r.angles.size());
                const Vec2 c{0.5, 0.5};
                for (double ang : r.angles) {
                    for (const auto& bp : base) {
                        std::vector<Vec2> poly;
                        poly.reserve(bp.size());
                        for (const Vec2& p : bp) poly.push_back(rotate_about(p, c, ang));
                        polys.push_back(std::move(poly));
                    }
                }
                return polys;
            } else {
                throw std::invalid_argument("custom recipes carry no polygons");
            }
        },
        recipe.value);
}

RasterSet generate(const SetRecipe& recipe, const GridSpec& g, int subsamples) {
    validate_recipe(recipe);
    if (const auto* custom = std::get_if<CustomRecipe>(&recipe.value)) {
        RasterSet loaded = read_pgm16(custom->path);
        if (!(loaded.grid() == g))
            throw std::invalid_argument("custom raster grid does not match the requested grid");
        return loaded;
    }
    const int sub = std::max(2, subsamples);
    const double feature = min_feature(recipe);
    if (g.h() / sub > feature / 2.0 * (1.0 + 1e-12)) {
        const int needed = static_cast<int>(std::ceil(2.0 * g.side / (feature * sub)));
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "grid too coarse for recipe feature %.3g: need cells_per_side >= %d", feature,
                      needed);
        throw std::invalid_argument(buf);
    }

    const auto polys = recipe_polygons(recipe);
    BitGrid bg(g.cells_per_side * sub, g.cells_per_side * sub);
    for (const auto& poly : polys) fill_convex(bg, poly, g, sub);

    RasterSet out(g);
    const double inv = 1.0 / (sub * sub);
    for (int iy = 0; iy < g.cells_per_side; ++iy) {
        for (int ix = 0; ix < g.cells_per_side; ++ix) {
            int c = 0;
            for (int r = iy * sub; r < (iy + 1) * sub; ++r)
                c += bg.count_range(r, ix * sub, (ix + 1) * sub - 1);
            if (c > 0) out.at(ix, iy) = c * inv;
        }
    }
    return out;
}

std::vector<double> distance_transform_sq(const std::vector<uint8_t>& seed, int nx, int ny) {
    const double kInf = 1e18;
    std::vector<double> f(static_cast<size_t>(nx) * ny);

    // 1-D squared distance transform (lower envelope of parabolas)
    auto dt1d = [](const std::vector<double>& src, std::vector<double>& dst, int n,
                   std::vector<int>& v, std::vector<double>& z) {
        int k = 0;
        v[0] = 0;
        z[0] = -1e20;
        z[1] = 1e20;
        for (int q = 1; q < n; ++q) {
            double s = ((src[q] + q * static_cast<double>(q)) -
                        (src[v[k]] + v[k] * static_cast<double>(v[k]))) /
                       (2.0 * q - 2.0 * v[k]);
            while (s <= z[k]) {
                --k;
                s = ((src[q] + q * static_cast<double>(q)) -
                     (src[v[k]] + v[k] * static_cast<double>(v[k]))) /
                    (2.0 * q - 2.0 * v[k]);
            }
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = 1e20;
        }
        k = 0;
        for (int q = 0; q < n; ++q) {
            while (z[k + 1] < q) ++k;
            const double d = q - static_cast<double>(v[k]);
            dst[q] = d * d + src[v[k]];
        }
    };

    for (size_t i = 0; i < f.size(); ++i) f[i] = seed[i] ? 0.0 : kInf;

    const int nmax = std::max(nx, ny);
    std::vector<double> col(nmax), out(nmax);
    std::vector<int> v(nmax);
    std::vector<double> z(nmax + 1);

    // columns
    for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) col[y] = f[static_cast<size_t>(y) * nx + x];
        dt1d(col, out, ny, v, z);
        for (int y = 0; y < ny; ++y) f[static_cast<size_t>(y) * nx + x] = out[y];
    }
    // rows
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) col[x] = f[static_cast<size_t>(y) * nx + x];
        dt1d(col, out, nx, v, z);
        for (int x = 0; x < nx; ++x) f[static_cast<size_t>(y) * nx + x] = out[x];
    }
    return f;
}

RasterSet neighborhood(const RasterSet& k, double delta) {
    const GridSpec& g = k.grid();
    const double h = g.h();
    if (delta < 2.0 * h * (1.0 - 1e-12))
        throw std::invalid_argument("neighborhood: delta must be >= 2h");

    const int n = g.cells_per_side;
    std::vector<uint8_t> seed(static_cast<size_t>(n) * n, 0);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            if (k.at(ix, iy) >= 0.5) seed[static_cast<size_t>(iy) * n + ix] = 1;

    RasterSet out(g);
    bool any = false;
    for (uint8_t s : seed) any |= (s != 0);
    if (any) {
        const auto d2 = distance_transform_sq(seed, n, n);
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const double d = std::sqrt(d2[static_cast<size_t>(iy) * n + ix]) * h;
                const double cov = (delta + 0.5 * h - d) / h;
                out.at(ix, iy) = std::clamp(cov, 0.0, 1.0);
            }
        }
    }
    out.max_with(k);
    return out;
}

std::vector<double> perron_area_trend(const std::vector<int>& depths, double delta,
                                      const GridSpec& g) {
    std::vector<double> areas;
    areas.reserve(depths.size());
    for (int d : depths) {
        SetRecipe recipe{PerronTreeRecipe{d}};
        areas.push_back(neighborhood(generate(recipe, g), delta).area());
    }
    return areas;
}

std::string recipe_name(const SetRecipe& recipe) {
    char buf[96];
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SquareRecipe>) {
                std::snprintf(buf, sizeof(buf), "square(%g)", r.side);
            } else if constexpr (std::is_same_v<T, DiscRecipe>) {
                std::snprintf(buf, sizeof(buf), "disc(%g)", r.radius);
            } else if constexpr (std::is_same_v<T, CantorProductRecipe>) {
                std::snprintf(buf, sizeof(buf), "cantor_product(%g,%d,%g)", r.ratio, r.depth,
                              r.direction);
            } else if constexpr (std::is_same_v<T, PerronTreeRecipe>) {
                std::snprintf(buf, sizeof(buf), "perron_tree(%d)", r.depth);
            } else if constexpr (std::is_same_v<T, UnionRotationsRecipe>) {
                std::snprintf(buf, sizeof(buf), "union_rotations(x%zu)", r.angles.size());
            } else {
                std::snprintf(buf, sizeof(buf), "custom");
            }
        },
        recipe.value);
    return buf;
}

}  // namespace kakeya
