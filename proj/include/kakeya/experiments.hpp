#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kakeya/testsets.hpp"
#include "kakeya/tube_measures.hpp"

namespace kakeya {

struct WindowSpec {
    Vec2 origin{-0.5, -0.5};
    double side = 2.0;
};

struct ExperimentConfig {
    SetRecipe recipe{SquareRecipe{1.0}};
    double s = 0.5;
    double t = 0.0;
    std::vector<double> deltas;
    std::vector<double> lambda_grid;  // weaktype
    int n_dirs = 32;
    uint64_t seed = 1;
    int h_per_delta = 8;
    int pairs_per_delta = 60;        // correlation
    int oracle_pairs_per_delta = 6;  // correlation raster cross-check
    int oracle_h_per_delta = 16;
    std::vector<int> depths;  // dichotomy
    WindowSpec window;
    int threads = 0;          // execution detail, not part of the manifest
    std::string out_dir;

    GridSpec grid_for(double delta) const;
    nlohmann::ordered_json resolved_json(const std::string& experiment) const;
};

struct Criterion {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "=="
};

struct ExperimentReport {
    std::string experiment;
    uint64_t config_hash = 0;
    nlohmann::ordered_json resolved_config;
    std::vector<Criterion> criteria;
    std::map<std::string, std::string> metadata;
    // file name -> content, all generated in memory for deterministic bytes
    std::vector<std::pair<std::string, std::string>> files;

    bool passed() const;
    double criterion_value(const std::string& name) const;
};

// Strict schema parsing: unknown keys are rejected, and the scientific
// parameters (deltas, s, t) have no defaults.
ExperimentConfig parse_experiment_config(const nlohmann::json& j, const std::string& experiment);

SetRecipe recipe_from_json(const nlohmann::json& j);
nlohmann::ordered_json recipe_to_json(const SetRecipe& recipe);

// The declared direction set of a recipe (angles of a union of rotations,
// or the single direction of a Cantor product).
std::vector<double> recipe_angle_set(const SetRecipe& recipe);

ExperimentReport exp_weak_type(const ExperimentConfig& cfg);
ExperimentReport exp_correlation(const ExperimentConfig& cfg);
ExperimentReport exp_dichotomy(const ExperimentConfig& cfg);
ExperimentReport exp_lower_bound_chain(const ExperimentConfig& cfg);

// Write report files plus report.json and manifest.json into out_dir.
void write_experiment_outputs(const ExperimentReport& report, const std::string& out_dir);

// Pipeline: project the recipe's segment family for direction `angle` onto
// the direction, snap to the delta grid, build the Frostman measure,
// discretize, and lift into k_delta. Throws LiftError on failure.
TubeRectMeasure pipeline_measure(const SetRecipe& recipe, double angle, double delta,
                                 const RasterSet& k_delta, double s);

}  // namespace kakeya
