#include "kakeya/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace kakeya {

SimplexSolution simplex_max(const std::vector<double>& c,
                            const std::vector<std::vector<double>>& rows,
                            const std::vector<double>& rhs, int max_iterations) {
    const int n = static_cast<int>(c.size());
    const int m = static_cast<int>(rows.size());
    const int width = n + m + 1;  // vars, slacks, rhs
    if (max_iterations <= 0) max_iterations = 50 * (n + m) + 200;

    std::vector<double> tab(static_cast<size_t>(m + 1) * width, 0.0);
    auto at = [&](int r, int col) -> double& { return tab[static_cast<size_t>(r) * width + col]; };
    for (int i = 0; i < m; ++i) {
        if (rhs[i] < 0.0) throw std::invalid_argument("simplex_max: rhs must be nonnegative");
        for (int j = 0; j < n; ++j) at(i, j) = rows[i][j];
        at(i, n + i) = 1.0;
        at(i, n + m) = rhs[i];
    }
    for (int j = 0; j < n; ++j) at(m, j) = -c[j];

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    const double eps = 1e-11;
    SimplexSolution sol;
    int stalled = 0;
    double last_obj = 0.0;
    bool bland = false;

    for (int iter = 0; iter < max_iterations; ++iter) {
        // entering column
        int enter = -1;
        if (!bland) {
            double best = -eps;
            for (int j = 0; j < n + m; ++j) {
                if (at(m, j) < best) {
                    best = at(m, j);
                    enter = j;
                }
            }
        } else {
            for (int j = 0; j < n + m; ++j) {
                if (at(m, j) < -eps) {
                    enter = j;
                    break;
                }
            }
        }
        if (enter < 0) {
            sol.optimal = true;
            sol.iterations = iter;
            break;
        }

        // ratio test; ties resolved toward the smallest basis variable
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            const double a = at(i, enter);
            if (a > eps) {
                const double ratio = at(i, n + m) / a;
                if (leave < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) throw std::runtime_error("simplex_max: unbounded program");

        // pivot
        const double piv = at(leave, enter);
        for (int j = 0; j < width; ++j) at(leave, j) /= piv;
        at(leave, enter) = 1.0;
        for (int r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double f = at(r, enter);
            if (f == 0.0) continue;
            for (int j = 0; j < width; ++j) at(r, j) -= f * at(leave, j);
            at(r, enter) = 0.0;
        }
        basis[leave] = enter;

        const double obj = at(m, n + m);
        if (obj <= last_obj + 1e-13) {
            if (++stalled > 2 * (n + m)) bland = true;  // anti-cycling
        } else {
            stalled = 0;
            last_obj = obj;
        }
        sol.iterations = iter + 1;
    }

    sol.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = at(i, n + m);
    sol.dual.assign(m, 0.0);
    for (int i = 0; i < m; ++i) sol.dual[i] = at(m, n + i);
    sol.objective = at(m, n + m);
    return sol;
}

}  // namespace kakeya
