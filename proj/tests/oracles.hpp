#pragma once

// Brute-force oracles used by the unit and acceptance suites. Everything
// here is independent of the library's primary computation paths: areas by
// midpoint sampling, and linear programs by exhaustive vertex enumeration.

#include <algorithm>
#include <cmath>
#include <vector>

#include "kakeya/geometry.hpp"
#include "kakeya/maximal.hpp"

namespace kakeya::oracle {

// Intersection area by midpoint sampling on an absolute lattice of pitch h.
inline double intersection_area_sampled(const RectSpec& r1, const RectSpec& r2, double h) {
    const auto c1 = r1.corners();
    const auto c2 = r2.corners();
    auto inside = [](const std::array<Vec2, 4>& quad, const Vec2& p) {
        // CCW corner order by construction
        for (int i = 0; i < 4; ++i) {
            const Vec2& a = quad[i];
            const Vec2& b = quad[(i + 1) % 4];
            if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0.0) return false;
        }
        return true;
    };
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Vec2& p : c1) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    for (const Vec2& p : c2) {
        xmin = std::max(xmin, std::min(xmin, p.x));
    }
    // restrict to the bbox intersection
    double x2min = 1e300, x2max = -1e300, y2min = 1e300, y2max = -1e300;
    for (const Vec2& p : c2) {
        x2min = std::min(x2min, p.x);
        x2max = std::max(x2max, p.x);
        y2min = std::min(y2min, p.y);
        y2max = std::max(y2max, p.y);
    }
    xmin = std::max(xmin, x2min);
    xmax = std::min(xmax, x2max);
    ymin = std::max(ymin, y2min);
    ymax = std::min(ymax, y2max);
    if (xmin >= xmax || ymin >= ymax) return 0.0;
    const long ix0 = static_cast<long>(std::floor(xmin / h));
    const long ix1 = static_cast<long>(std::floor(xmax / h));
    const long iy0 = static_cast<long>(std::floor(ymin / h));
    const long iy1 = static_cast<long>(std::floor(ymax / h));
    long count = 0;
    for (long iy = iy0; iy <= iy1; ++iy) {
        for (long ix = ix0; ix <= ix1; ++ix) {
            const Vec2 p{(ix + 0.5) * h, (iy + 0.5) * h};
            if (inside(c1, p) && inside(c2, p)) ++count;
        }
    }
    return static_cast<double>(count) * h * h;
}

// Exhaustive vertex enumeration of the weight polytope
//   { a >= 0 : delta * sum_{j in [p,q)} a_j <= ((q-p) delta)^s for all
//     intervals, delta * sum a_j <= 1 }.
// Vertices are enumerated once per (n, delta, s); objectives are evaluated
// as dot products against the Pareto-maximal vertices.
class WeightPolytopeOracle {
  public:
    WeightPolytopeOracle(int n, double delta, double s) : n_(n) {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q <= n; ++q) {
                std::vector<double> row(static_cast<size_t>(n), 0.0);
                for (int j = p; j < q; ++j) row[static_cast<size_t>(j)] = delta;
                rows.push_back(std::move(row));
                rhs.push_back(std::pow((q - p) * delta, s));
            }
        }
        {
            std::vector<double> row(static_cast<size_t>(n), delta);
            rows.push_back(std::move(row));
            rhs.push_back(1.0);
        }
        for (int j = 0; j < n; ++j) {  // -a_j <= 0
            std::vector<double> row(static_cast<size_t>(n), 0.0);
            row[static_cast<size_t>(j)] = -1.0;
            rows.push_back(std::move(row));
            rhs.push_back(0.0);
        }
        const int m = static_cast<int>(rows.size());

        std::vector<int> pick(static_cast<size_t>(n));
        std::vector<std::vector<double>> mat;
        std::vector<double> b;
        std::vector<double> x(static_cast<size_t>(n));
        enumerate(rows, rhs, m, 0, 0, pick, mat, b, x);

        // dedupe
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end(),
                                    [](const auto& a, const auto& b) {
                                        for (size_t i = 0; i < a.size(); ++i)
                                            if (std::abs(a[i] - b[i]) > 1e-9) return false;
                                        return true;
                                    }),
                        vertices_.end());
        // Pareto filter: dominated vertices never win for v >= 0
        std::vector<std::vector<double>> pareto;
        for (const auto& u : vertices_) {
            bool dominated = false;
            for (const auto& v : vertices_) {
                if (&u == &v) continue;
                bool all_ge = true, strict = false;
                for (size_t i = 0; i < u.size(); ++i) {
                    if (v[i] < u[i] - 1e-12) {
                        all_ge = false;
                        break;
                    }
                    if (v[i] > u[i] + 1e-12) strict = true;
                }
                if (all_ge && strict) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) pareto.push_back(u);
        }
        vertices_ = std::move(pareto);
    }

    double best(const std::vector<double>& values) const {
        double best = 0.0;  // the origin is always feasible
        for (const auto& v : vertices_) {
            double dot = 0.0;
            for (int j = 0; j < n_; ++j) dot += values[static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
            best = std::max(best, dot);
        }
        return best;
    }

    size_t vertex_count() const { return vertices_.size(); }

  private:
    void enumerate(const std::vector<std::vector<double>>& rows, const std::vector<double>& rhs,
                   int m, int start, int depth, std::vector<int>& pick,
                   std::vector<std::vector<double>>& mat, std::vector<double>& b,
                   std::vector<double>& x) {
        if (depth == n_) {
            mat.assign(static_cast<size_t>(n_), std::vector<double>(static_cast<size_t>(n_)));
            b.assign(static_cast<size_t>(n_), 0.0);
            for (int i = 0; i < n_; ++i) {
                mat[static_cast<size_t>(i)] = rows[static_cast<size_t>(pick[static_cast<size_t>(i)])];
                b[static_cast<size_t>(i)] = rhs[static_cast<size_t>(pick[static_cast<size_t>(i)])];
            }
            if (!solve(mat, b, x)) return;
            for (int i = 0; i < m; ++i) {
                double lhs = 0.0;
                for (int j = 0; j < n_; ++j)
                    lhs += rows[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
                if (lhs > rhs[static_cast<size_t>(i)] + 1e-9) return;
            }
            vertices_.push_back(x);
            return;
        }
        for (int i = start; i <= m - (n_ - depth); ++i) {
            pick[static_cast<size_t>(depth)] = i;
            enumerate(rows, rhs, m, i + 1, depth + 1, pick, mat, b, x);
        }
    }

    static bool solve(std::vector<std::vector<double>>& a, std::vector<double>& b,
                      std::vector<double>& x) {
        const int n = static_cast<int>(b.size());
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(a[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
                    std::abs(a[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                    piv = r;
            if (std::abs(a[static_cast<size_t>(piv)][static_cast<size_t>(col)]) < 1e-12) return false;
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(col)]);
            std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                const double f = a[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                                 a[static_cast<size_t>(col)][static_cast<size_t>(col)];
                if (f == 0.0) continue;
                for (int c = col; c < n; ++c)
                    a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                        f * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
                b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
            }
        }
        for (int i = 0; i < n; ++i)
            x[static_cast<size_t>(i)] =
                b[static_cast<size_t>(i)] / a[static_cast<size_t>(i)][static_cast<size_t>(i)];
        return true;
    }

    int n_;
    std::vector<std::vector<double>> vertices_;
};

}  // namespace kakeya::oracle
