#pragma once

#include <vector>

namespace kakeya {

struct SimplexSolution {
    std::vector<double> x;
    std::vector<double> dual;  // one multiplier per constraint row
    double objective = 0.0;
    int iterations = 0;
    bool optimal = false;
};

// Dense primal simplex for: maximize c.x subject to A x <= b, x >= 0,
// with b >= 0 (the slack basis is feasible, so no phase 1). Dantzig pricing
// with a Bland fallback against cycling. Deterministic.
SimplexSolution simplex_max(const std::vector<double>& c,
                            const std::vector<std::vector<double>>& rows,
                            const std::vector<double>& rhs, int max_iterations = 0);

}  // namespace kakeya
