#include "kakeya/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "kakeya/experiments.hpp"
#include "kakeya/frostman.hpp"
#include "kakeya/io.hpp"
#include "kakeya/maximal.hpp"
#include "kakeya/svg_render.hpp"
#include "kakeya/version.hpp"

namespace kakeya {

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    int threads = 0;
    std::vector<double> deltas;
    double s = -1.0, t = -1.0;
    long long seed = -1;
    std::string lambda_grid;
    int dirs = 0;
};

void add_common_flags(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config_path, "JSON config file")->required();
    sub->add_option("--out", f.out_dir, "output directory (KAKEYA_LAB_OUT overrides)");
    sub->add_option("--threads", f.threads, "worker threads (0 = hardware)");
    sub->add_option("--delta", f.deltas, "override delta list (repeatable)");
    sub->add_option("--s", f.s, "override growth exponent s");
    sub->add_option("--t", f.t, "override direction-measure exponent t");
    sub->add_option("--seed", f.seed, "override RNG seed");
    sub->add_option("--lambda-grid", f.lambda_grid, "override lambda grid, comma separated");
    sub->add_option("--dirs", f.dirs, "override direction count");
}

nlohmann::json load_config(const CommonFlags& f) {
    std::string text;
    try {
        text = read_text_file(f.config_path);
    } catch (const IoError&) {
        throw IoError("config file not found: " + f.config_path);
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + f.config_path + ": " + e.what());
    }
    // flag overrides rewrite the document before validation
    if (!f.deltas.empty()) j["deltas"] = f.deltas;
    if (f.s >= 0.0) j["s"] = f.s;
    if (f.t >= 0.0) j["t"] = f.t;
    if (f.seed >= 0) j["seed"] = static_cast<uint64_t>(f.seed);
    if (f.dirs > 0) j["n_dirs"] = f.dirs;
    if (!f.lambda_grid.empty()) {
        std::vector<double> grid;
        const std::string& s = f.lambda_grid;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t comma = s.find(',', pos);
            if (comma == std::string::npos) comma = s.size();
            try {
                grid.push_back(std::stod(s.substr(pos, comma - pos)));
            } catch (const std::exception&) {
                throw ConfigError("--lambda-grid: expected comma-separated numbers");
            }
            pos = comma + 1;
        }
        j["lambda_grid"] = grid;
    }
    return j;
}

std::string resolve_out_dir(const CommonFlags& f) {
    const char* env = std::getenv("KAKEYA_LAB_OUT");
    if (env && *env) return env;
    return f.out_dir;
}

int run_experiment(const std::string& kind, const CommonFlags& flags) {
    const nlohmann::json j = load_config(flags);
    ExperimentConfig cfg = parse_experiment_config(j, kind);
    cfg.threads = flags.threads;
    cfg.out_dir = resolve_out_dir(flags);

    ExperimentReport report;
    if (kind == "weaktype")
        report = exp_weak_type(cfg);
    else if (kind == "correlation")
        report = exp_correlation(cfg);
    else if (kind == "dichotomy")
        report = exp_dichotomy(cfg);
    else
        report = exp_lower_bound_chain(cfg);

    write_experiment_outputs(report, cfg.out_dir);
    for (const auto& c : report.criteria)
        std::fprintf(stderr, "[%s] %s value=%.6g threshold=%.6g\n", c.passed ? "pass" : "FAIL",
                     c.name.c_str(), c.value, c.threshold);
    return report.passed() ? 0 : 1;
}

void require_keys_local(const nlohmann::json& j, const std::set<std::string>& allowed,
                        const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
}

int run_maximal(const CommonFlags& flags) {
    const nlohmann::json j = load_config(flags);
    require_keys_local(j, {"recipe", "delta", "deltas", "s", "n_dirs", "h_per_delta", "window",
                           "use_neighborhood", "seed"},
                       "config");
    if (!j.contains("recipe")) throw ConfigError("config: missing required key \"recipe\"");
    const SetRecipe recipe = recipe_from_json(j.at("recipe"));
    if (!j.contains("s")) throw ConfigError("config: missing required key \"s\"");
    const double s = j.at("s").get<double>();
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("config: s must lie in (0, 1]");
    double delta = 0.0;
    if (j.contains("delta"))
        delta = j.at("delta").get<double>();
    else if (j.contains("deltas") && j.at("deltas").is_array() && !j.at("deltas").empty())
        delta = j.at("deltas").at(0).get<double>();
    else
        throw ConfigError("config: missing required key \"delta\"");
    if (!(delta > 0.0 && delta <= 0.5)) throw ConfigError("config: delta must lie in (0, 0.5]");
    const int n_dirs = j.value("n_dirs", 16);
    if (n_dirs < 2) throw ConfigError("config: n_dirs must be >= 2");
    const int h_per_delta = j.value("h_per_delta", 8);
    if (h_per_delta < 4) throw ConfigError("config: h_per_delta must be >= 4");
    const bool use_neighborhood = j.value("use_neighborhood", false);

    WindowSpec window;
    if (j.contains("window")) {
        const auto& w = j.at("window");
        require_keys_local(w, {"origin", "side"}, "config.window");
        if (w.contains("origin"))
            window.origin = {w.at("origin").at(0).get<double>(), w.at("origin").at(1).get<double>()};
        if (w.contains("side")) window.side = w.at("side").get<double>();
    }

    GridSpec grid;
    grid.origin = window.origin;
    grid.side = window.side;
    grid.cells_per_side = static_cast<int>(std::lround(window.side * h_per_delta / delta));

    RasterSet f = generate(recipe, grid);
    if (use_neighborhood) f = neighborhood(f, delta);
    const auto sweep = direction_sweep(f, delta, s, n_dirs, flags.threads);

    CsvWriter csv({"angle", "value", "mass", "binding_len"});
    std::vector<double> values;
    double vmax = 0.0;
    for (int i = 0; i < n_dirs; ++i) {
        const auto& r = sweep[static_cast<size_t>(i)];
        const double angle = std::numbers::pi * i / n_dirs;
        csv.row({angle, r.value, r.measure.mass(), r.binding_length});
        values.push_back(r.value);
        vmax = std::max(vmax, r.value);
    }

    const std::string out_dir = resolve_out_dir(flags);
    ensure_directory(out_dir);
    nlohmann::ordered_json resolved;
    resolved["experiment"] = "maximal";
    resolved["recipe"] = recipe_to_json(recipe);
    resolved["delta"] = delta;
    resolved["s"] = s;
    resolved["n_dirs"] = n_dirs;
    resolved["h_per_delta"] = h_per_delta;
    resolved["use_neighborhood"] = use_neighborhood;
    resolved["window"] = {{"origin", {window.origin.x, window.origin.y}}, {"side", window.side}};

    write_pgm16(out_dir + "/set.pgm", f, recipe_name(recipe));
    const std::string strip =
        render_heat_strip_svg(values, vmax > 0.0 ? vmax : 1.0, "maximal values by direction");
    std::vector<std::pair<std::string, std::string>> files = {{"sweep.csv", csv.str()},
                                                              {"sweep.svg", strip}};

    nlohmann::ordered_json manifest;
    manifest["tool"] = "kakeya_lab";
    manifest["version"] = kVersion;
    manifest["experiment"] = "maximal";
    manifest["config"] = resolved;
    manifest["config_hash"] = hex64(fnv1a64(resolved.dump()));
    manifest["metadata"] = {{"direction_metric", "chord"}};
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, content] : files) {
        write_text_file(out_dir + "/" + name, content);
        manifest["outputs"].push_back(
            {{"name", name}, {"bytes", content.size()}, {"fnv64", hex64(fnv1a64(content))}});
    }
    write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return 0;
}

int run_frostman(const CommonFlags& flags) {
    const nlohmann::json j = load_config(flags);
    require_keys_local(j, {"set", "s", "circle", "seed"}, "config");
    if (!j.contains("set")) throw ConfigError("config: missing required key \"set\"");
    if (!j.contains("s")) throw ConfigError("config: missing required key \"s\"");
    const double s = j.at("s").get<double>();
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("config: s must lie in (0, 1]");

    const auto& set_spec = j.at("set");
    CompactGridSet1D set;
    if (!set_spec.contains("type")) throw ConfigError("config.set: missing \"type\"");
    const std::string type = set_spec.at("type").get<std::string>();
    if (type == "cantor") {
        require_keys_local(set_spec, {"type", "ratio", "depth"}, "config.set");
        const double ratio = set_spec.at("ratio").get<double>();
        const int depth = set_spec.at("depth").get<int>();
        if (!(ratio > 0.0 && ratio < 0.5)) throw ConfigError("config.set: ratio must be in (0,0.5)");
        if (depth < 0 || depth > 12) throw ConfigError("config.set: depth must be in [0,12]");
        const double delta = std::pow(ratio, depth);
        std::vector<std::pair<double, double>> intervals;
        for (const Interval& iv : cantor_stage_intervals(ratio, depth))
            intervals.push_back({iv.lo, iv.hi});
        set = snap_intervals_to_grid(intervals, delta);
    } else if (type == "cells") {
        require_keys_local(set_spec, {"type", "delta", "cells"}, "config.set");
        set.delta = set_spec.at("delta").get<double>();
        if (!(set.delta > 0.0)) throw ConfigError("config.set: delta must be positive");
        for (const auto& c : set_spec.at("cells")) set.occupied.push_back(c.get<long>());
        set.normalize();
    } else {
        throw ConfigError("config.set: unknown type \"" + type + "\"");
    }
    if (set.empty()) throw ConfigError("config.set: empty support");

    const StepMeasure1D mu = frostman_build_1d(set, s);
    const double mass = mu.total_mass();
    const double ratio = growth_ratio(mu, s);
    const double content = interval_content(set, s);

    CsvWriter measure_csv({"index", "mass"});
    for (long k = mu.lo(); k < mu.hi(); ++k)
        measure_csv.row({static_cast<double>(k), mu.cell_mass(k)});

    nlohmann::ordered_json rep;
    rep["set_cells"] = set.occupied.size();
    rep["cell_width"] = set.delta;
    rep["s"] = s;
    rep["total_mass"] = mass;
    rep["growth_ratio"] = ratio;
    rep["growth_slack_allowed"] = kDyadicSlack;
    rep["interval_content"] = content;
    rep["mass_over_content"] = content > 0.0 ? mass / content : 0.0;

    std::vector<std::pair<std::string, std::string>> files = {{"measure.csv", measure_csv.str()}};

    if (j.contains("circle")) {
        const auto& cj = j.at("circle");
        require_keys_local(cj, {"n_cells", "arcs", "t", "riesz_s"}, "config.circle");
        const int n_cells = cj.value("n_cells", 256);
        if (n_cells < 2) throw ConfigError("config.circle: n_cells must be >= 2");
        const double t = cj.value("t", 0.0);
        const double riesz_s = cj.value("riesz_s", s);
        if (!(t < riesz_s))
            throw ConfigError("config.circle: requires t < s for the riesz integral");
        CircleArcSet arcs;
        arcs.n_cells = n_cells;
        if (!cj.contains("arcs") || (cj.at("arcs").is_string() &&
                                     cj.at("arcs").get<std::string>() == "full")) {
            for (int i = 0; i < n_cells; ++i) arcs.occupied.push_back(i);
        } else if (cj.at("arcs").is_object()) {
            const auto& aj = cj.at("arcs");
            require_keys_local(aj, {"type", "ratio", "depth"}, "config.circle.arcs");
            const double aratio = aj.at("ratio").get<double>();
            const int adepth = aj.at("depth").get<int>();
            const double w = std::numbers::pi / n_cells;
            std::vector<std::pair<double, double>> intervals;
            for (const Interval& iv : cantor_stage_intervals(aratio, adepth))
                intervals.push_back({iv.lo * std::numbers::pi, iv.hi * std::numbers::pi});
            const CompactGridSet1D snapped = snap_intervals_to_grid(intervals, w);
            for (long c : snapped.occupied)
                if (c >= 0 && c < n_cells) arcs.occupied.push_back(static_cast<int>(c));
        } else {
            throw ConfigError("config.circle: arcs must be \"full\" or a cantor object");
        }
        const CircleMeasure sigma = circle_frostman(arcs, t);
        const RieszResult riesz = riesz_integral(sigma, riesz_s);
        CsvWriter circle_csv({"index", "mass"});
        for (int i = 0; i < n_cells; ++i)
            circle_csv.row({static_cast<double>(i), sigma.mass[static_cast<size_t>(i)]});
        files.emplace_back("circle.csv", circle_csv.str());
        rep["circle"] = {{"n_cells", n_cells},
                         {"t", t},
                         {"total_mass", sigma.total_mass()},
                         {"ball_growth_ratio", ball_growth_ratio(sigma, t)},
                         {"riesz_s", riesz_s},
                         {"riesz_value", riesz.value},
                         {"riesz_may_diverge", riesz.may_diverge}};
    }

    const std::string out_dir = resolve_out_dir(flags);
    ensure_directory(out_dir);
    files.emplace_back("report.json", rep.dump(2) + "\n");

    nlohmann::ordered_json manifest;
    manifest["tool"] = "kakeya_lab";
    manifest["version"] = kVersion;
    manifest["experiment"] = "frostman";
    nlohmann::ordered_json resolved = j;
    manifest["config"] = resolved;
    manifest["config_hash"] = hex64(fnv1a64(resolved.dump()));
    manifest["metadata"] = {{"direction_metric", "chord"},
                            {"growth_check", "grid intervals, dyadic slack 4"}};
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, content] : files) {
        write_text_file(out_dir + "/" + name, content);
        manifest["outputs"].push_back(
            {{"name", name}, {"bytes", content.size()}, {"fnv64", hex64(fnv1a64(content))}});
    }
    write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return 0;
}

int run_render(const CommonFlags& flags) {
    const nlohmann::json j = load_config(flags);
    require_keys_local(j, {"inputs"}, "config");
    if (!j.contains("inputs") || !j.at("inputs").is_array() || j.at("inputs").empty())
        throw ConfigError("config: \"inputs\" must be a nonempty array of file paths");

    const std::string out_dir = resolve_out_dir(flags);
    ensure_directory(out_dir);

    std::vector<TubeRectMeasure> measures;
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : j.at("inputs")) {
        const std::string path = entry.get<std::string>();
        const std::string stem = std::filesystem::path(path).stem().string();
        if (path.size() > 4 && path.substr(path.size() - 4) == ".pgm") {
            const RasterSet raster = read_pgm16(path);
            files.emplace_back(stem + ".svg", render_raster_svg(raster));
        } else if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
            nlohmann::json side;
            try {
                side = nlohmann::json::parse(read_text_file(path + ".json"));
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("render: malformed sidecar for " + path + ": " + e.what());
            }
            try {
                measures.push_back(measure_from_csv(read_text_file(path),
                                                    side.at("direction_angle").get<double>(),
                                                    side.at("delta").get<double>(),
                                                    side.at("s").get<double>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("render: " + std::string(e.what()));
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("render: sidecar for " + path + ": " + e.what());
            }
        } else {
            throw ConfigError("render: unsupported input \"" + path + "\" (need .pgm or .csv)");
        }
    }
    if (!measures.empty()) {
        Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
        for (const auto& mu : measures) {
            for (const auto& [jj, entry] : mu.entries()) {
                for (const Vec2& p : mu.rect(jj).corners()) {
                    lo.x = std::min(lo.x, p.x - 0.05);
                    lo.y = std::min(lo.y, p.y - 0.05);
                    hi.x = std::max(hi.x, p.x + 0.05);
                    hi.y = std::max(hi.y, p.y + 0.05);
                }
            }
        }
        if (lo.x > hi.x) {
            lo = {0.0, 0.0};
            hi = {1.0, 1.0};
        }
        files.emplace_back("measures.svg", render_measures_svg(measures, lo, hi));
    }

    nlohmann::ordered_json manifest;
    manifest["tool"] = "kakeya_lab";
    manifest["version"] = kVersion;
    manifest["experiment"] = "render";
    manifest["config"] = j;
    manifest["config_hash"] = hex64(fnv1a64(j.dump()));
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, content] : files) {
        write_text_file(out_dir + "/" + name, content);
        manifest["outputs"].push_back(
            {{"name", name}, {"bytes", content.size()}, {"fnv64", hex64(fnv1a64(content))}});
    }
    write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"tube-geometry measure experiments"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    static const char* kExperiments[] = {"weaktype", "correlation", "dichotomy", "chain"};
    std::map<std::string, CommonFlags> flags;
    for (const char* name : kExperiments) {
        CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
        add_common_flags(sub, flags[name]);
    }
    add_common_flags(app.add_subcommand("maximal", "direction sweep of the maximal operator"),
                     flags["maximal"]);
    add_common_flags(app.add_subcommand("frostman", "frostman measure construction report"),
                     flags["frostman"]);
    add_common_flags(app.add_subcommand("render", "render rasters/measures to SVG"),
                     flags["render"]);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help / --version
            std::cout << app.help() << std::flush;
            return 0;
        }
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    try {
        for (const char* name : kExperiments)
            if (app.get_subcommand(name)->parsed()) return run_experiment(name, flags[name]);
        if (app.get_subcommand("maximal")->parsed()) return run_maximal(flags["maximal"]);
        if (app.get_subcommand("frostman")->parsed()) return run_frostman(flags["frostman"]);
        if (app.get_subcommand("render")->parsed()) return run_render(flags["render"]);
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace kakeya
