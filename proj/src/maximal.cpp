#include "kakeya/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kakeya/lp.hpp"
#include "kakeya/rotgrid.hpp"

namespace kakeya {

namespace {

struct IntervalConstraint {
    int p = 0, q = 0;  // [p, q) over 0-based tube positions
    double bound = 0.0;
    bool mass_cap = false;
};

std::vector<double> interval_caps(const WeightProgram& prog) {
    const int n = static_cast<int>(prog.values.size());
    std::vector<double> caps(static_cast<size_t>(n) + 1, 0.0);
    for (int len = 1; len <= n; ++len) caps[len] = std::pow(len * prog.delta, prog.s);
    return caps;
}

// candidate intervals to scan for violations
void scan_violations(const WeightProgram& prog, const std::vector<double>& caps,
                     const std::vector<double>& weights,
                     std::vector<IntervalConstraint>& violated, double tol) {
    const int n = static_cast<int>(prog.values.size());
    std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
    for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + weights[j];
    violated.clear();
    auto check = [&](int p, int q) {
        const double lhs = prog.delta * (prefix[q] - prefix[p]);
        if (lhs > caps[q - p] + tol) violated.push_back({p, q, caps[q - p], false});
    };
    if (!prog.dyadic_only) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 2; q <= n; ++q) check(p, q);
    } else {
        for (int block = 2; block < 2 * n; block *= 2)
            for (int p = 0; p * block < n; ++p)
                check(p * block, std::min(n, (p + 1) * block));
    }
}

}  // namespace

WeightSolution solve_weights(const WeightProgram& prog) {
    const int n = static_cast<int>(prog.values.size());
    WeightSolution sol;
    if (n == 0) return sol;
    if (!(prog.delta > 0.0)) throw std::invalid_argument("solve_weights: delta must be positive");
    for (double v : prog.values)
        if (v < 0.0) throw std::invalid_argument("solve_weights: values must be nonnegative");

    const std::vector<double> caps = interval_caps(prog);

    // active set: all single cells, the full range, and the mass cap
    std::vector<IntervalConstraint> active;
    active.reserve(2 * n + 8);
    for (int j = 0; j < n; ++j) active.push_back({j, j + 1, caps[1], false});
    if (n > 1) active.push_back({0, n, caps[n], false});
    active.push_back({0, n, 1.0, true});

    std::vector<IntervalConstraint> violated;
    SimplexSolution lp;
    int total_iters = 0;
    bool clean = false;
    for (int round = 0; round < 1000; ++round) {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        rows.reserve(active.size());
        rhs.reserve(active.size());
        for (const auto& ic : active) {
            std::vector<double> row(static_cast<size_t>(n), 0.0);
            for (int j = ic.p; j < ic.q; ++j) row[j] = prog.delta;
            rows.push_back(std::move(row));
            rhs.push_back(ic.bound);
        }
        lp = simplex_max(prog.values, rows, rhs);
        total_iters += lp.iterations;

        scan_violations(prog, caps, lp.x, violated, 1e-10);
        if (violated.empty()) {
            clean = true;
            break;
        }
        std::sort(violated.begin(), violated.end(), [&](const auto& a, const auto& b) {
            if (a.q - a.p != b.q - b.p) return a.q - a.p < b.q - b.p;
            return a.p < b.p;
        });
        const size_t take = std::min<size_t>(violated.size(), 24);
        for (size_t i = 0; i < take; ++i) active.push_back(violated[i]);
    }
    if (!clean) throw std::runtime_error("solve_weights: constraint generation did not converge");

    sol.weights = lp.x;
    for (double& w : sol.weights) w = std::max(w, 0.0);
    sol.objective = lp.objective;
    sol.iterations = total_iters;

    double dual_bound = 0.0;
    for (size_t i = 0; i < active.size(); ++i) dual_bound += lp.dual[i] * active[i].bound;
    sol.duality_gap = std::abs(dual_bound - lp.objective);

    // smallest tight interval constraint; 0 when only the mass cap binds
    std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
    for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + sol.weights[j];
    double min_len = 0.0;
    for (const auto& ic : active) {
        if (ic.mass_cap) continue;
        const double lhs = prog.delta * (prefix[ic.q] - prefix[ic.p]);
        if (lhs >= ic.bound - 1e-9 * std::max(1.0, ic.bound)) {
            const double len = prog.delta * (ic.q - ic.p);
            if (min_len == 0.0 || len < min_len) min_len = len;
        }
    }
    sol.binding_length = min_len;
    return sol;
}

std::vector<double> greedy_weights(const WeightProgram& prog) {
    const int n = static_cast<int>(prog.values.size());
    std::vector<double> a(static_cast<size_t>(n), 0.0);
    const std::vector<double> caps = interval_caps(prog);

    std::vector<int> order(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (prog.values[i] != prog.values[j]) return prog.values[i] > prog.values[j];
        return i < j;
    });

    double total = 0.0;
    std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
    for (int j : order) {
        if (prog.values[j] <= 0.0) break;
        for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + a[k];
        // headroom of every interval containing j, plus the mass cap
        double room = 1.0 - prog.delta * total;
        for (int p = 0; p <= j; ++p)
            for (int q = j + 1; q <= n; ++q)
                room = std::min(room, caps[q - p] - prog.delta * (prefix[q] - prefix[p]));
        const double add = std::max(0.0, room / prog.delta);
        a[static_cast<size_t>(j)] = add;
        total += add;
    }
    return a;
}

std::pair<double, double> tube_best_rect(const RasterSet& f, const TubeId& tube) {
    if (f.grid().h() > tube.delta / 4.0 * (1.0 + 1e-12))
        throw std::invalid_argument("tube_best_rect: raster too coarse (need h <= delta/4)");
    const RotatedGrid rg(f, tube.direction, tube.delta, /*need_sum=*/true, /*need_occ=*/false);
    return rg.best_window(tube.index);
}

MaximalResult maximal_value(const RasterSet& f, const Direction& e, double delta, double s) {
    if (f.grid().h() > delta / 4.0 * (1.0 + 1e-12))
        throw std::invalid_argument("maximal_value: raster too coarse (need h <= delta/4)");

    const RotatedGrid rg(f, e, delta, /*need_sum=*/true, /*need_occ=*/false);
    MaximalResult res;
    res.e = e;
    res.delta = delta;
    res.s = s;
    res.j0 = rg.first_tube();

    const long n_tubes = rg.end_tube() - rg.first_tube();
    res.tube_values.resize(static_cast<size_t>(n_tubes));
    res.tube_offsets.resize(static_cast<size_t>(n_tubes));
    for (long j = rg.first_tube(); j < rg.end_tube(); ++j) {
        const auto [offset, v] = rg.best_window(j);
        res.tube_offsets[static_cast<size_t>(j - rg.first_tube())] = offset;
        res.tube_values[static_cast<size_t>(j - rg.first_tube())] = v;
    }

    WeightProgram prog;
    prog.delta = delta;
    prog.s = s;
    prog.j0 = res.j0;
    prog.values = res.tube_values;
    prog.dyadic_only = n_tubes > 512;

    const WeightSolution ws = solve_weights(prog);
    res.weights = ws.weights;
    res.value = ws.objective;
    res.lp_iterations = ws.iterations;
    res.duality_gap = ws.duality_gap;
    res.binding_length = ws.binding_length;

    std::map<long, TubeRectMeasure::Entry> entries;
    for (long j = 0; j < n_tubes; ++j) {
        const double w = ws.weights[static_cast<size_t>(j)];
        if (w > 1e-12)
            entries[res.j0 + j] = {res.tube_offsets[static_cast<size_t>(j)], w};
    }
    res.measure = TubeRectMeasure::create(e, delta, s, std::move(entries), prog.dyadic_only);
    return res;
}

std::vector<MaximalResult> direction_sweep(const RasterSet& f, double delta, double s, int n_dirs,
                                           int threads) {
    if (n_dirs < 2) throw std::invalid_argument("direction_sweep: need at least 2 directions");
    std::vector<MaximalResult> results(static_cast<size_t>(n_dirs));
    parallel_for(static_cast<size_t>(n_dirs), threads, [&](size_t i) {
        const double angle = std::numbers::pi * static_cast<double>(i) / n_dirs;
        results[i] = maximal_value(f, Direction(angle), delta, s);
    });
    return results;
}

}  // namespace kakeya
