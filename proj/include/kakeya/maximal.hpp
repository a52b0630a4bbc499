#pragma once

#include <vector>

#include "kakeya/tube_measures.hpp"

namespace kakeya {

// The linear program extracted from the maximal operator: maximize
// sum a_j v_j over weights a_j >= 0 subject to the mass cap
// delta * sum a_j <= 1 and, for every contiguous index interval [p,q),
// delta * sum_{j in [p,q)} a_j <= ((q-p) delta)^s.
struct WeightProgram {
    double delta = 0.0;
    double s = 1.0;
    long j0 = 0;                 // first tube index of the contiguous range
    std::vector<double> values;  // v_j, best rectangle integral per tube
    // Above 512 tubes the interval constraints are pruned to aligned dyadic
    // intervals (arbitrary intervals then hold up to factor 4).
    bool dyadic_only = false;
};

struct WeightSolution {
    std::vector<double> weights;
    double objective = 0.0;
    int iterations = 0;
    double duality_gap = 0.0;
    // delta * (q - p) of the smallest tight constraint at the optimum;
    // 0 when only the unit mass cap is tight (or nothing is).
    double binding_length = 0.0;
};

WeightSolution solve_weights(const WeightProgram& p);

// Water-filling heuristic: raise each weight to its cap in order of
// decreasing value. Always feasible, not always optimal; cross-checked
// against the program in the tests.
std::vector<double> greedy_weights(const WeightProgram& p);

struct MaximalResult {
    double value = 0.0;
    Direction e;
    double delta = 0.0;
    double s = 1.0;
    long j0 = 0;
    std::vector<double> tube_values;   // v_j
    std::vector<double> tube_offsets;  // chosen rectangle offset per tube
    std::vector<double> weights;       // optimal a_j
    TubeRectMeasure measure;           // the achieving (delta,e,s)-measure
    int lp_iterations = 0;
    double duality_gap = 0.0;
    double binding_length = 0.0;
};

// Best rectangle integral of f over one tube: the sliding-window maximum
// over offsets on the grid lattice. Returns {offset, value}.
std::pair<double, double> tube_best_rect(const RasterSet& f, const TubeId& tube);

// Evaluate the maximal operator at direction e: per-tube best rectangles,
// then the weight program. Requires f.grid().h() <= delta/4.
MaximalResult maximal_value(const RasterSet& f, const Direction& e, double delta, double s);

// maximal_value at n_dirs equispaced angles i*pi/n_dirs. Parallel across
// directions; the output order never depends on the thread count.
std::vector<MaximalResult> direction_sweep(const RasterSet& f, double delta, double s, int n_dirs,
                                           int threads = 0);

}  // namespace kakeya
