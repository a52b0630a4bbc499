#include "kakeya/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>

#include "kakeya/fit.hpp"
#include "kakeya/io.hpp"
#include "kakeya/maximal.hpp"
#include "kakeya/svg_render.hpp"
#include "kakeya/version.hpp"

namespace kakeya {

namespace {

constexpr double kPi = std::numbers::pi;

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key))
            throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

double require_number(const nlohmann::json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing required key \"" + key + "\"");
    if (!j.at(key).is_number()) throw ConfigError(where + ": \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

std::vector<double> require_number_list(const nlohmann::json& j, const std::string& key,
                                        const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing required key \"" + key + "\"");
    if (!j.at(key).is_array() || j.at(key).empty())
        throw ConfigError(where + ": \"" + key + "\" must be a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw ConfigError(where + ": \"" + key + "\" must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

SetRecipe recipe_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ConfigError("recipe: expected an object with a \"type\" string");
    const std::string type = j.at("type").get<std::string>();
    if (type == "square") {
        require_keys(j, {"type", "side"}, "recipe.square");
        return SetRecipe{SquareRecipe{require_number(j, "side", "recipe.square")}};
    }
    if (type == "disc") {
        require_keys(j, {"type", "radius"}, "recipe.disc");
        return SetRecipe{DiscRecipe{require_number(j, "radius", "recipe.disc")}};
    }
    if (type == "cantor_product") {
        require_keys(j, {"type", "ratio", "depth", "direction"}, "recipe.cantor_product");
        CantorProductRecipe r;
        r.ratio = require_number(j, "ratio", "recipe.cantor_product");
        r.depth = static_cast<int>(require_number(j, "depth", "recipe.cantor_product"));
        r.direction = j.value("direction", 0.0);
        return SetRecipe{r};
    }
    if (type == "perron_tree") {
        require_keys(j, {"type", "depth", "overlap"}, "recipe.perron_tree");
        PerronTreeRecipe r;
        r.depth = static_cast<int>(require_number(j, "depth", "recipe.perron_tree"));
        r.overlap = j.value("overlap", 0.0);
        return SetRecipe{r};
    }
    if (type == "union_rotations") {
        require_keys(j, {"type", "base", "angles", "n_angles"}, "recipe.union_rotations");
        if (!j.contains("base")) throw ConfigError("recipe.union_rotations: missing \"base\"");
        UnionRotationsRecipe r;
        r.base = std::make_shared<SetRecipe>(recipe_from_json(j.at("base")));
        if (j.contains("angles") == j.contains("n_angles"))
            throw ConfigError(
                "recipe.union_rotations: provide exactly one of \"angles\" or \"n_angles\"");
        if (j.contains("angles")) {
            for (const auto& a : j.at("angles")) r.angles.push_back(a.get<double>());
        } else {
            const int k = j.at("n_angles").get<int>();
            if (k < 1) throw ConfigError("recipe.union_rotations: n_angles must be >= 1");
            for (int i = 0; i < k; ++i) r.angles.push_back(kPi * i / k);
        }
        return SetRecipe{r};
    }
    if (type == "custom") {
        require_keys(j, {"type", "path"}, "recipe.custom");
        if (!j.contains("path") || !j.at("path").is_string())
            throw ConfigError("recipe.custom: missing \"path\" string");
        return SetRecipe{CustomRecipe{j.at("path").get<std::string>()}};
    }
    throw ConfigError("recipe: unknown type \"" + type + "\"");
}

nlohmann::ordered_json recipe_to_json(const SetRecipe& recipe) {
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SquareRecipe>) {
                j = {{"type", "square"}, {"side", r.side}};
            } else if constexpr (std::is_same_v<T, DiscRecipe>) {
                j = {{"type", "disc"}, {"radius", r.radius}};
            } else if constexpr (std::is_same_v<T, CantorProductRecipe>) {
                j = {{"type", "cantor_product"},
                     {"ratio", r.ratio},
                     {"depth", r.depth},
                     {"direction", r.direction}};
            } else if constexpr (std::is_same_v<T, PerronTreeRecipe>) {
                j = {{"type", "perron_tree"}, {"depth", r.depth}};
                if (r.overlap != 0.0) j["overlap"] = r.overlap;
            } else if constexpr (std::is_same_v<T, UnionRotationsRecipe>) {
                j = {{"type", "union_rotations"}, {"base", recipe_to_json(*r.base)}};
                j["angles"] = r.angles;
            } else {
                j = {{"type", "custom"}, {"path", r.path}};
            }
        },
        recipe.value);
    return j;
}

std::vector<double> recipe_angle_set(const SetRecipe& recipe) {
    std::vector<double> angles;
    if (const auto* u = std::get_if<UnionRotationsRecipe>(&recipe.value)) {
        double base_dir = 0.0;
        if (const auto* c = std::get_if<CantorProductRecipe>(&u->base->value))
            base_dir = c->direction;
        for (double a : u->angles) angles.push_back(Direction::normalize(base_dir + a));
    } else if (const auto* c = std::get_if<CantorProductRecipe>(&recipe.value)) {
        angles.push_back(Direction::normalize(c->direction));
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    return angles;
}

GridSpec ExperimentConfig::grid_for(double delta) const {
    const double h = delta / h_per_delta;
    GridSpec g;
    g.origin = window.origin;
    g.side = window.side;
    g.cells_per_side = static_cast<int>(std::lround(window.side / h));
    return g;
}

nlohmann::ordered_json ExperimentConfig::resolved_json(const std::string& experiment) const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["recipe"] = recipe_to_json(recipe);
    j["s"] = s;
    j["t"] = t;
    j["deltas"] = deltas;
    if (!lambda_grid.empty()) j["lambda_grid"] = lambda_grid;
    j["n_dirs"] = n_dirs;
    j["seed"] = seed;
    j["h_per_delta"] = h_per_delta;
    if (experiment == "correlation") {
        j["pairs_per_delta"] = pairs_per_delta;
        j["oracle_pairs_per_delta"] = oracle_pairs_per_delta;
        j["oracle_h_per_delta"] = oracle_h_per_delta;
    }
    if (!depths.empty()) j["depths"] = depths;
    j["window"] = {{"origin", {window.origin.x, window.origin.y}}, {"side", window.side}};
    return j;
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j, const std::string& experiment) {
    const std::set<std::string> allowed = {
        "experiment", "recipe",          "s",
        "t",          "deltas",          "lambda_grid",
        "n_dirs",     "seed",            "h_per_delta",
        "pairs_per_delta", "oracle_pairs_per_delta", "oracle_h_per_delta",
        "depths",     "window"};
    require_keys(j, allowed, "config");
    if (j.contains("experiment") && j.at("experiment").get<std::string>() != experiment)
        throw ConfigError("config: \"experiment\" disagrees with the requested subcommand");

    ExperimentConfig cfg;
    if (!j.contains("recipe")) throw ConfigError("config: missing required key \"recipe\"");
    cfg.recipe = recipe_from_json(j.at("recipe"));
    cfg.s = require_number(j, "s", "config");
    if (!(cfg.s > 0.0 && cfg.s <= 1.0)) throw ConfigError("config: s must lie in (0, 1]");

    const bool needs_t = (experiment == "weaktype" || experiment == "chain");
    if (needs_t || j.contains("t")) {
        cfg.t = require_number(j, "t", "config");
        if (!(cfg.t < cfg.s))
            throw ConfigError("config: requires t < s (growth exponent condition)");
    }

    cfg.deltas = require_number_list(j, "deltas", "config");
    for (double d : cfg.deltas)
        if (!(d > 0.0 && d <= 0.5)) throw ConfigError("config: deltas must lie in (0, 0.5]");

    if (experiment == "weaktype") {
        cfg.lambda_grid = require_number_list(j, "lambda_grid", "config");
        for (double l : cfg.lambda_grid)
            if (!(l > 0.0)) throw ConfigError("config: lambda grid must be positive");
    } else if (j.contains("lambda_grid")) {
        cfg.lambda_grid = require_number_list(j, "lambda_grid", "config");
    }

    if (experiment == "weaktype" || experiment == "chain") {
        cfg.n_dirs = static_cast<int>(require_number(j, "n_dirs", "config"));
    } else if (j.contains("n_dirs")) {
        cfg.n_dirs = j.at("n_dirs").get<int>();
    }
    if (cfg.n_dirs < 2) throw ConfigError("config: n_dirs must be >= 2");

    if (experiment == "dichotomy") {
        if (!j.contains("depths")) throw ConfigError("config: missing required key \"depths\"");
        for (const auto& d : j.at("depths")) cfg.depths.push_back(d.get<int>());
        if (cfg.depths.empty()) throw ConfigError("config: depths must be nonempty");
    } else if (j.contains("depths")) {
        for (const auto& d : j.at("depths")) cfg.depths.push_back(d.get<int>());
    }

    cfg.seed = j.value("seed", uint64_t{1});
    cfg.h_per_delta = j.value("h_per_delta", 8);
    if (cfg.h_per_delta < 4) throw ConfigError("config: h_per_delta must be >= 4");
    cfg.pairs_per_delta = j.value("pairs_per_delta", 60);
    cfg.oracle_pairs_per_delta = j.value("oracle_pairs_per_delta", 6);
    cfg.oracle_h_per_delta = j.value("oracle_h_per_delta", 16);

    if (j.contains("window")) {
        const auto& w = j.at("window");
        require_keys(w, {"origin", "side"}, "config.window");
        if (w.contains("origin"))
            cfg.window.origin = {w.at("origin").at(0).get<double>(),
                                 w.at("origin").at(1).get<double>()};
        if (w.contains("side")) cfg.window.side = w.at("side").get<double>();
        if (!(cfg.window.side > 0.0)) throw ConfigError("config: window side must be positive");
    }

    for (double d : cfg.deltas) {
        const GridSpec g = cfg.grid_for(d);
        if (g.cells_per_side > 8192)
            throw ConfigError("config: grid would exceed 8192 cells per side");
    }
    return cfg;
}

bool ExperimentReport::passed() const {
    for (const auto& c : criteria)
        if (!c.passed) return false;
    return true;
}

double ExperimentReport::criterion_value(const std::string& name) const {
    for (const auto& c : criteria)
        if (c.name == name) return c.value;
    throw std::invalid_argument("no criterion named " + name);
}

TubeRectMeasure pipeline_measure(const SetRecipe& recipe, double angle, double delta,
                                 const RasterSet& k_delta, double s) {
    const CantorProductRecipe* base = std::get_if<CantorProductRecipe>(&recipe.value);
    if (const auto* u = std::get_if<UnionRotationsRecipe>(&recipe.value))
        base = std::get_if<CantorProductRecipe>(&u->base->value);
    if (!base)
        throw std::invalid_argument(
            "pipeline_measure: recipe must be a cantor product or a union of its rotations");

    // projection of the rotated copy onto its own direction: the Cantor
    // intervals shifted by 0.5*(cos a + sin a - 1)
    const double shift = 0.5 * (std::cos(angle) + std::sin(angle) - 1.0);
    std::vector<std::pair<double, double>> intervals;
    for (const Interval& iv : cantor_stage_intervals(base->ratio, base->depth))
        intervals.push_back({iv.lo + shift, iv.hi + shift});

    const CompactGridSet1D set = snap_intervals_to_grid(intervals, delta);
    if (set.empty()) throw LiftError("pipeline_measure: projection snapped to nothing", {});
    const StepMeasure1D nu_tilde = frostman_build_1d(set, s);
    const StepMeasure1D nu = discretize_frostman(nu_tilde, delta);
    return lift_to_rectangles(nu, k_delta, Direction(angle), s);
}

// ---------------------------------------------------------------- weaktype

ExperimentReport exp_weak_type(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.experiment = "weaktype";
    report.resolved_config = cfg.resolved_json("weaktype");
    report.config_hash = fnv1a64(report.resolved_config.dump());

    CircleArcSet full;
    full.n_cells = cfg.n_dirs;
    for (int i = 0; i < cfg.n_dirs; ++i) full.occupied.push_back(i);
    const CircleMeasure sigma = circle_frostman(full, cfg.t);

    CsvWriter table({"delta", "lambda", "level_mass", "q"});
    CsvWriter sup_table({"delta", "sup_q", "area_b"});
    std::vector<double> sup_qs;
    for (double delta : cfg.deltas) {
        const GridSpec g = cfg.grid_for(delta);
        const RasterSet b = generate(cfg.recipe, g);
        const double area_b = b.area();
        const auto sweep = direction_sweep(b, delta, cfg.s, cfg.n_dirs, cfg.threads);
        double sup_q = 0.0;
        for (double lambda : cfg.lambda_grid) {
            double level = 0.0;
            for (int i = 0; i < cfg.n_dirs; ++i)
                if (sweep[static_cast<size_t>(i)].value >= lambda)
                    level += sigma.mass[static_cast<size_t>(i)];
            const double q = area_b > 0.0 ? lambda * lambda * level / area_b : 0.0;
            sup_q = std::max(sup_q, q);
            table.row({delta, lambda, level, q});
        }
        sup_qs.push_back(sup_q);
        sup_table.row({delta, sup_q, area_b});
    }

    std::vector<double> inv_deltas;
    for (double d : cfg.deltas) inv_deltas.push_back(1.0 / d);
    const LineFit fit = fit_loglog(inv_deltas, sup_qs);
    const double spread = *std::max_element(sup_qs.begin(), sup_qs.end()) /
                          std::max(1e-300, *std::min_element(sup_qs.begin(), sup_qs.end()));

    report.criteria.push_back(
        {"weak_type_slope", std::abs(fit.slope) <= 0.1, fit.slope, 0.1, "|x| <="});
    report.criteria.push_back({"weak_type_sup_spread", spread <= 1.2, spread, 1.2, "<="});
    report.metadata["direction_metric"] = "chord";
    report.metadata["sigma"] = "uniform circle frostman, t = " + CsvWriter::format(cfg.t);

    ScatterSeries series{"sup_q", "#c23b22", inv_deltas, sup_qs};
    ScatterLine line{"#555555", fit.slope, fit.intercept};
    report.files.emplace_back("weaktype.csv", table.str());
    report.files.emplace_back("weaktype_sup.csv", sup_table.str());
    report.files.emplace_back(
        "weaktype.svg", render_loglog_svg("sup_lambda Q vs 1/delta", "1/delta", "sup Q",
                                          {series}, {line}));
    return report;
}

// ------------------------------------------------------------- correlation

namespace {

struct PairSample {
    int a = 0, b = 0;
};

std::vector<PairSample> sample_pairs(int n_angles, int budget, uint64_t seed) {
    std::vector<PairSample> all;
    for (int a = 0; a < n_angles; ++a)
        for (int b = a + 1; b < n_angles; ++b) all.push_back({a, b});
    if (static_cast<int>(all.size()) <= budget) return all;
    SplitMix64 rng(seed);
    for (size_t i = 0; i < all.size(); ++i) {  // Fisher-Yates
        const size_t j = i + rng.below(all.size() - i);
        std::swap(all[i], all[j]);
    }
    all.resize(static_cast<size_t>(budget));
    std::sort(all.begin(), all.end(), [](const PairSample& x, const PairSample& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return all;
}

// raster-product cross-check evaluated pair-of-rectangles locally on the
// absolute h-lattice; equals the full-grid product sum by bilinearity
double correlation_raster_local(const TubeRectMeasure& mu1, const TubeRectMeasure& mu2, double h) {
    double total = 0.0;
    const double inv_h2 = 1.0 / (h * h);
    for (const auto& [j2, e2] : mu2.entries()) {
        const RectSpec r2 = mu2.rect(j2);
        const auto c2 = r2.corners();
        double xmin2 = c2[0].x, xmax2 = c2[0].x, ymin2 = c2[0].y, ymax2 = c2[0].y;
        for (const Vec2& p : c2) {
            xmin2 = std::min(xmin2, p.x);
            xmax2 = std::max(xmax2, p.x);
            ymin2 = std::min(ymin2, p.y);
            ymax2 = std::max(ymax2, p.y);
        }
        const Interval proj = projection_interval(mu1.direction(), r2);
        const long i0 = static_cast<long>(std::floor(proj.lo / mu1.delta())) - 1;
        const long i1 = static_cast<long>(std::floor(proj.hi / mu1.delta())) + 1;
        auto it = mu1.entries().lower_bound(i0);
        const auto end = mu1.entries().upper_bound(i1);
        for (; it != end; ++it) {
            const RectSpec r1 = mu1.rect(it->first);
            const auto c1 = r1.corners();
            double xmin = xmin2, xmax = xmax2, ymin = ymin2, ymax = ymax2;
            double x1min = c1[0].x, x1max = c1[0].x, y1min = c1[0].y, y1max = c1[0].y;
            for (const Vec2& p : c1) {
                x1min = std::min(x1min, p.x);
                x1max = std::max(x1max, p.x);
                y1min = std::min(y1min, p.y);
                y1max = std::max(y1max, p.y);
            }
            xmin = std::max(xmin, x1min);
            xmax = std::min(xmax, x1max);
            ymin = std::max(ymin, y1min);
            ymax = std::min(ymax, y1max);
            if (xmin >= xmax || ymin >= ymax) continue;
            const long cx0 = static_cast<long>(std::floor(xmin / h));
            const long cx1 = static_cast<long>(std::floor(xmax / h));
            const long cy0 = static_cast<long>(std::floor(ymin / h));
            const long cy1 = static_cast<long>(std::floor(ymax / h));
            double sum = 0.0;
            for (long cy = cy0; cy <= cy1; ++cy) {
                for (long cx = cx0; cx <= cx1; ++cx) {
                    const std::array<Vec2, 4> cell = {
                        Vec2{cx * h, cy * h}, Vec2{(cx + 1) * h, cy * h},
                        Vec2{(cx + 1) * h, (cy + 1) * h}, Vec2{cx * h, (cy + 1) * h}};
                    const double a1 = convex_quad_intersection_area(c1, cell);
                    if (a1 <= 0.0) continue;
                    const double a2 = convex_quad_intersection_area(c2, cell);
                    if (a2 <= 0.0) continue;
                    sum += a1 * a2 * inv_h2;
                }
            }
            total += it->second.weight * e2.weight * sum;
        }
    }
    return total;
}

}  // namespace

ExperimentReport exp_correlation(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.experiment = "correlation";
    report.resolved_config = cfg.resolved_json("correlation");
    report.config_hash = fnv1a64(report.resolved_config.dump());

    const std::vector<double> angles = recipe_angle_set(cfg.recipe);
    if (angles.size() < 2)
        throw ConfigError("correlation: recipe must declare at least two directions "
                          "(union_rotations of a cantor product)");

    CsvWriter table({"delta", "angle_gap", "correlation", "bound_ratio"});
    CsvWriter oracle_table({"delta", "angle_a", "angle_b", "exact", "raster", "rel_diff"});
    std::vector<double> pooled_gaps, pooled_corrs;
    std::vector<double> per_delta_max;
    double oracle_worst = 0.0;
    long total_failures = 0;
    std::string overlay_svg;

    for (size_t di = 0; di < cfg.deltas.size(); ++di) {
        const double delta = cfg.deltas[di];
        const GridSpec g = cfg.grid_for(delta);
        const RasterSet k = generate(cfg.recipe, g);
        const RasterSet k_delta = neighborhood(k, delta);

        std::vector<std::optional<TubeRectMeasure>> measures(angles.size());
        std::vector<uint8_t> failed(angles.size(), 0);
        parallel_for(angles.size(), cfg.threads, [&](size_t i) {
            try {
                measures[i] = pipeline_measure(cfg.recipe, angles[i], delta, k_delta, cfg.s);
            } catch (const LiftError&) {
                failed[i] = 1;
            }
        });
        for (uint8_t f : failed) total_failures += f;

        std::vector<int> ok;
        for (size_t i = 0; i < angles.size(); ++i)
            if (!failed[i]) ok.push_back(static_cast<int>(i));
        const auto pairs = sample_pairs(static_cast<int>(ok.size()), cfg.pairs_per_delta,
                                        stream_seed(cfg.seed, di));

        double max_ratio = 0.0;
        int oracle_done = 0;
        for (const auto& pr : pairs) {
            const int ia = ok[static_cast<size_t>(pr.a)];
            const int ib = ok[static_cast<size_t>(pr.b)];
            const TubeRectMeasure& m1 = *measures[static_cast<size_t>(ia)];
            const TubeRectMeasure& m2 = *measures[static_cast<size_t>(ib)];
            const double corr = correlation(m1, m2);
            const double gap = chord_distance(m1.direction(), m2.direction());
            const double bound = std::pow(gap + delta, cfg.s - 1.0);
            const double ratio = corr / bound;
            max_ratio = std::max(max_ratio, ratio);
            table.row({delta, gap, corr, ratio});
            pooled_gaps.push_back(gap);
            pooled_corrs.push_back(corr);

            if (oracle_done < cfg.oracle_pairs_per_delta && corr > 0.0) {
                const double h_oracle = delta / cfg.oracle_h_per_delta;
                const double raster = correlation_raster_local(m1, m2, h_oracle);
                const double rel = std::abs(corr - raster) / std::max(raster, 1e-300);
                oracle_worst = std::max(oracle_worst, rel);
                oracle_table.row({delta, angles[static_cast<size_t>(ia)],
                                  angles[static_cast<size_t>(ib)], corr, raster, rel});
                ++oracle_done;
            }
        }
        if (!pairs.empty()) per_delta_max.push_back(max_ratio);

        if (overlay_svg.empty() && ok.size() >= 2) {
            overlay_svg = render_measures_svg(
                {*measures[static_cast<size_t>(ok[0])], *measures[static_cast<size_t>(ok[1])]},
                g.origin, g.max_corner());
        }
    }

    const LineFit env = envelope_slope(pooled_gaps, pooled_corrs, 8);
    const double spread =
        per_delta_max.empty()
            ? 0.0
            : *std::max_element(per_delta_max.begin(), per_delta_max.end()) /
                  std::max(1e-300, *std::min_element(per_delta_max.begin(), per_delta_max.end()));

    report.criteria.push_back({"correlation_ratio_spread", spread <= 2.0, spread, 2.0, "<="});
    report.criteria.push_back({"correlation_envelope_slope",
                               std::abs(env.slope - (cfg.s - 1.0)) <= 0.1, env.slope,
                               cfg.s - 1.0, "|x - thr| <= 0.1"});
    report.criteria.push_back(
        {"correlation_oracle_match", oracle_worst <= 0.02, oracle_worst, 0.02, "<="});
    report.criteria.push_back({"correlation_lift_failures", total_failures == 0,
                               static_cast<double>(total_failures), 0.0, "=="});
    report.metadata["direction_metric"] = "chord";
    report.metadata["gap_floor"] = "angle gap floored by +delta in the bound";

    ScatterSeries series{"pairs", "#2b6fb3", pooled_gaps, pooled_corrs};
    ScatterLine ref{"#c23b22", cfg.s - 1.0, env.intercept};
    ScatterLine fitted{"#555555", env.slope, env.intercept};
    report.files.emplace_back("correlation.csv", table.str());
    report.files.emplace_back("correlation_oracle.csv", oracle_table.str());
    report.files.emplace_back("correlation.svg",
                              render_loglog_svg("correlation vs angle gap", "angle gap",
                                                "correlation", {series}, {ref, fitted}));
    if (!overlay_svg.empty()) report.files.emplace_back("measures_overlay.svg", overlay_svg);
    return report;
}

// --------------------------------------------------------------- dichotomy

ExperimentReport exp_dichotomy(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.experiment = "dichotomy";
    report.resolved_config = cfg.resolved_json("dichotomy");
    report.config_hash = fnv1a64(report.resolved_config.dump());

    std::vector<double> deltas = cfg.deltas;
    std::sort(deltas.begin(), deltas.end(), std::greater<>());
    const double delta_min = deltas.back();
    const double delta_max = deltas.front();

    CsvWriter table({"family", "depth", "delta", "area"});

    // (a) Perron tree across delta at the deepest stage
    const int deep = *std::max_element(cfg.depths.begin(), cfg.depths.end());
    std::vector<double> perron_by_delta;
    for (double d : deltas) {
        const SetRecipe r{PerronTreeRecipe{deep}};
        const double area = neighborhood(generate(r, cfg.grid_for(d)), d).area();
        perron_by_delta.push_back(area);
        table.row_mixed({"perron_delta", CsvWriter::format(deep), CsvWriter::format(d),
                         CsvWriter::format(area)});
    }

    // (a') Perron tree across depth at the finest delta
    const std::vector<double> perron_by_depth =
        perron_area_trend(cfg.depths, delta_min, cfg.grid_for(delta_min));
    for (size_t i = 0; i < cfg.depths.size(); ++i)
        table.row_mixed({"perron_depth", CsvWriter::format(cfg.depths[i]),
                         CsvWriter::format(delta_min), CsvWriter::format(perron_by_depth[i])});

    // (b) the multi-line set across delta
    std::vector<double> union_by_delta;
    for (double d : deltas) {
        const double area = neighborhood(generate(cfg.recipe, cfg.grid_for(d)), d).area();
        union_by_delta.push_back(area);
        table.row_mixed({"multiline_delta", "", CsvWriter::format(d), CsvWriter::format(area)});
    }

    const double perron_delta_drop =
        (perron_by_delta.front() - perron_by_delta.back()) / perron_by_delta.front();
    const double perron_depth_drop =
        (perron_by_depth.front() - perron_by_depth.back()) / perron_by_depth.front();
    bool strictly_decreasing = true;
    for (size_t i = 1; i < perron_by_depth.size(); ++i)
        strictly_decreasing &= perron_by_depth[i] < perron_by_depth[i - 1];
    const double union_ref = union_by_delta.back();  // smallest delta
    double union_dev = 0.0;
    for (double a : union_by_delta) union_dev = std::max(union_dev, std::abs(a - union_ref) / union_ref);

    report.criteria.push_back(
        {"perron_depth_decrease", perron_depth_drop >= 0.3, perron_depth_drop, 0.3, ">="});
    report.criteria.push_back(
        {"perron_delta_decrease", perron_delta_drop >= 0.3, perron_delta_drop, 0.3, ">="});
    report.criteria.push_back({"perron_depth_strictly_decreasing", strictly_decreasing,
                               strictly_decreasing ? 1.0 : 0.0, 1.0, "=="});
    report.criteria.push_back(
        {"multiline_delta_stability", union_dev <= 0.1, union_dev, 0.1, "<="});
    report.metadata["perron_depth_trend_delta"] = CsvWriter::format(delta_min);
    report.metadata["perron_delta_trend_range"] =
        CsvWriter::format(delta_max) + " .. " + CsvWriter::format(delta_min);

    std::vector<double> depth_xs(cfg.depths.begin(), cfg.depths.end());
    ScatterSeries s1{"perron area(K(delta)) vs depth", "#c23b22", depth_xs, perron_by_depth};
    std::vector<double> inv_deltas;
    for (double d : deltas) inv_deltas.push_back(1.0 / d);
    ScatterSeries s2{"multiline area vs 1/delta", "#2b6fb3", inv_deltas, union_by_delta};
    report.files.emplace_back("dichotomy.csv", table.str());
    report.files.emplace_back("dichotomy.svg",
                              render_loglog_svg("area trends", "depth / 1 over delta", "area",
                                                {s1, s2}, {}));
    return report;
}

// -------------------------------------------------------------------- chain

ExperimentReport exp_lower_bound_chain(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.experiment = "chain";
    report.resolved_config = cfg.resolved_json("chain");
    report.config_hash = fnv1a64(report.resolved_config.dump());

    const std::vector<double> angles = recipe_angle_set(cfg.recipe);
    if (angles.empty())
        throw ConfigError("chain: recipe must declare its direction set (union of rotations)");

    CsvWriter table(
        {"delta", "min_mass", "sigma_mass", "area_k_delta", "lift_failures", "e_delta_cells"});
    std::vector<double> sigma_masses, areas;
    double max_failure_fraction = 0.0;

    for (double delta : cfg.deltas) {
        const GridSpec g = cfg.grid_for(delta);
        const RasterSet k = generate(cfg.recipe, g);
        const RasterSet k_delta = neighborhood(k, delta);
        const double area = k_delta.area();

        std::vector<double> masses(angles.size(), -1.0);
        parallel_for(angles.size(), cfg.threads, [&](size_t i) {
            try {
                masses[i] = pipeline_measure(cfg.recipe, angles[i], delta, k_delta, cfg.s).mass();
            } catch (const LiftError&) {
                masses[i] = -1.0;
            }
        });
        long failures = 0;
        double min_mass = 0.0;
        bool have = false;
        for (double m : masses) {
            if (m < 0.0) {
                ++failures;
            } else if (!have || m < min_mass) {
                min_mass = m;
                have = true;
            }
        }
        max_failure_fraction = std::max(
            max_failure_fraction, static_cast<double>(failures) / static_cast<double>(angles.size()));

        const auto sweep = direction_sweep(k_delta, delta, cfg.s, cfg.n_dirs, cfg.threads);
        const double threshold = have ? 0.5 * min_mass : 0.0;
        CircleArcSet e_delta;
        e_delta.n_cells = cfg.n_dirs;
        for (int i = 0; i < cfg.n_dirs; ++i)
            if (sweep[static_cast<size_t>(i)].value > threshold) e_delta.occupied.push_back(i);

        double sigma_mass = 0.0;
        if (!e_delta.occupied.empty())
            sigma_mass = circle_frostman(e_delta, cfg.t).total_mass();

        table.row({delta, min_mass, sigma_mass, area, static_cast<double>(failures),
                   static_cast<double>(e_delta.occupied.size())});
        sigma_masses.push_back(sigma_mass);
        areas.push_back(area);
    }

    const double sigma_ref = std::max(sigma_masses.front(), 1e-300);
    double sigma_min_ratio = 1e300;
    for (double m : sigma_masses) sigma_min_ratio = std::min(sigma_min_ratio, m / sigma_ref);
    const double area_ref = std::max(areas.front(), 1e-300);
    double area_min_ratio = 1e300;
    for (double a : areas) area_min_ratio = std::min(area_min_ratio, a / area_ref);

    report.criteria.push_back(
        {"chain_sigma_stability", sigma_min_ratio >= 0.1, sigma_min_ratio, 0.1, ">="});
    report.criteria.push_back(
        {"chain_area_lower_bound", area_min_ratio >= 0.5, area_min_ratio, 0.5, ">="});
    report.criteria.push_back({"chain_lift_failures", max_failure_fraction <= 0.1,
                               max_failure_fraction, 0.1, "<="});
    report.metadata["level_threshold"] = "half the minimum pipeline mass per delta";
    report.metadata["direction_metric"] = "chord";
    report.metadata["dimension_condition"] = "dim E0 > 1 - s";

    std::vector<double> inv_deltas;
    for (double d : cfg.deltas) inv_deltas.push_back(1.0 / d);
    ScatterSeries s1{"sigma mass", "#c23b22", inv_deltas, sigma_masses};
    ScatterSeries s2{"area K(delta)", "#2b6fb3", inv_deltas, areas};
    report.files.emplace_back("chain.csv", table.str());
    report.files.emplace_back(
        "chain.svg", render_loglog_svg("lower bound chain", "1/delta", "value", {s1, s2}, {}));
    return report;
}

// ------------------------------------------------------------------ output

void write_experiment_outputs(const ExperimentReport& report, const std::string& out_dir) {
    ensure_directory(out_dir);

    nlohmann::ordered_json rj;
    rj["experiment"] = report.experiment;
    rj["config_hash"] = hex64(report.config_hash);
    rj["passed"] = report.passed();
    rj["criteria"] = nlohmann::ordered_json::array();
    for (const auto& c : report.criteria)
        rj["criteria"].push_back({{"name", c.name},
                                  {"passed", c.passed},
                                  {"value", c.value},
                                  {"threshold", c.threshold},
                                  {"relation", c.relation}});
    const std::string report_str = rj.dump(2) + "\n";

    std::vector<std::pair<std::string, std::string>> files = report.files;
    files.emplace_back("report.json", report_str);
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    nlohmann::ordered_json manifest;
    manifest["tool"] = "kakeya_lab";
    manifest["version"] = kVersion;
    manifest["experiment"] = report.experiment;
    manifest["config"] = report.resolved_config;
    manifest["config_hash"] = hex64(report.config_hash);
    manifest["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.metadata) manifest["metadata"][k] = v;
    manifest["passed"] = report.passed();
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, content] : files) {
        write_text_file(out_dir + "/" + name, content);
        manifest["outputs"].push_back(
            {{"name", name}, {"bytes", content.size()}, {"fnv64", hex64(fnv1a64(content))}});
    }
    write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

}  // namespace kakeya
