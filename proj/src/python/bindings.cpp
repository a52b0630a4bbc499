#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "kakeya/experiments.hpp"
#include "kakeya/frostman.hpp"
#include "kakeya/geometry.hpp"
#include "kakeya/maximal.hpp"
#include "kakeya/testsets.hpp"
#include "kakeya/version.hpp"

namespace py = pybind11;
using namespace kakeya;

namespace {

SetRecipe recipe_from_string(const std::string& recipe_json) {
    return recipe_from_json(nlohmann::json::parse(recipe_json));
}

py::array_t<double> coverage_array(const RasterSet& r) {
    const int n = r.n();
    py::array_t<double> arr({n, n});
    auto buf = arr.mutable_unchecked<2>();
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) buf(iy, ix) = r.at(ix, iy);
    return arr;
}

RectSpec make_rect(double angle, double delta, long j, double offset) {
    return RectSpec{TubeId{Direction(angle), delta, j}, offset};
}

}  // namespace

PYBIND11_MODULE(_kakeya, m) {
    m.doc() = "tube geometry, Frostman measures and the multi-line maximal operator";
    m.attr("__version__") = kVersion;

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double ox, double oy, double side, int cells) {
                 GridSpec g;
                 g.origin = {ox, oy};
                 g.side = side;
                 g.cells_per_side = cells;
                 return g;
             }),
             py::arg("origin_x"), py::arg("origin_y"), py::arg("side"), py::arg("cells_per_side"))
        .def_property_readonly("h", &GridSpec::h)
        .def_readonly("side", &GridSpec::side)
        .def_readonly("cells_per_side", &GridSpec::cells_per_side);

    py::class_<RasterSet>(m, "RasterSet")
        .def_property_readonly("grid", &RasterSet::grid)
        .def("area", &RasterSet::area)
        .def("coverage", &coverage_array);

    py::class_<Direction>(m, "Direction")
        .def(py::init<double>(), py::arg("angle"))
        .def_property_readonly("angle", &Direction::angle);

    m.def("project", [](double angle, double x, double y) {
        return project(Direction(angle), {x, y});
    });
    m.def("tube_of", [](double angle, double delta, double x, double y) {
        return tube_of(Direction(angle), delta, {x, y});
    });
    m.def("chord_distance", [](double a, double b) {
        return chord_distance(Direction(a), Direction(b));
    });
    m.def("rect_intersection_area",
          [](double angle1, double delta1, long j1, double off1, double angle2, double delta2,
             long j2, double off2) {
              return rect_intersection_area(make_rect(angle1, delta1, j1, off1),
                                            make_rect(angle2, delta2, j2, off2));
          });
    m.def("projection_interval",
          [](double onto_angle, double angle, double delta, long j, double off) {
              const Interval iv =
                  projection_interval(Direction(onto_angle), make_rect(angle, delta, j, off));
              return std::make_pair(iv.lo, iv.hi);
          });

    m.def("generate", [](const std::string& recipe_json, const GridSpec& g) {
        return generate(recipe_from_string(recipe_json), g);
    });
    m.def("neighborhood", &neighborhood, py::arg("raster"), py::arg("delta"));

    py::class_<StepMeasure1D>(m, "StepMeasure1D")
        .def_property_readonly("delta", &StepMeasure1D::delta)
        .def_property_readonly("lo", &StepMeasure1D::lo)
        .def_property_readonly("weights", &StepMeasure1D::weights)
        .def("total_mass", &StepMeasure1D::total_mass)
        .def("interval_mass", &StepMeasure1D::interval_mass);

    m.def("frostman_build_1d", [](double delta, const std::vector<long>& cells, double s) {
        CompactGridSet1D set;
        set.delta = delta;
        set.occupied = cells;
        set.normalize();
        return frostman_build_1d(set, s);
    });
    m.def("growth_ratio", &growth_ratio, py::arg("measure"), py::arg("s"));
    m.def("interval_content", [](double delta, const std::vector<long>& cells, double s) {
        CompactGridSet1D set;
        set.delta = delta;
        set.occupied = cells;
        set.normalize();
        return interval_content(set, s);
    });
    m.def("cantor_cells", [](double ratio, int depth) {
        const double delta = std::pow(ratio, depth);
        std::vector<std::pair<double, double>> intervals;
        for (const Interval& iv : cantor_stage_intervals(ratio, depth))
            intervals.push_back({iv.lo, iv.hi});
        return snap_intervals_to_grid(intervals, delta).occupied;
    });

    py::class_<CircleMeasure>(m, "CircleMeasure")
        .def_readonly("n_cells", &CircleMeasure::n_cells)
        .def_readonly("t", &CircleMeasure::t)
        .def_readonly("mass", &CircleMeasure::mass)
        .def("total_mass", &CircleMeasure::total_mass);

    m.def("circle_frostman", [](int n_cells, const std::vector<int>& occupied, double t) {
        CircleArcSet arcs;
        arcs.n_cells = n_cells;
        arcs.occupied = occupied;
        return circle_frostman(arcs, t);
    });
    m.def("ball_growth_ratio", &ball_growth_ratio);
    m.def("riesz_integral", [](const CircleMeasure& sigma, double s) {
        const RieszResult r = riesz_integral(sigma, s);
        return std::make_pair(r.value, r.may_diverge);
    });

    py::class_<TubeRectMeasure>(m, "TubeRectMeasure")
        .def_property_readonly("delta", &TubeRectMeasure::delta)
        .def_property_readonly("s", &TubeRectMeasure::s)
        .def_property_readonly("angle", [](const TubeRectMeasure& mu) {
            return mu.direction().angle();
        })
        .def("mass", &TubeRectMeasure::mass)
        .def("entries", [](const TubeRectMeasure& mu) {
            std::map<long, std::pair<double, double>> out;
            for (const auto& [j, e] : mu.entries()) out[j] = {e.offset, e.weight};
            return out;
        });

    m.def("discretize_frostman", &discretize_frostman, py::arg("nu_tilde"), py::arg("delta"));
    m.def("lift_to_rectangles",
          [](const StepMeasure1D& nu, const RasterSet& k_delta, double angle, double s) {
              return lift_to_rectangles(nu, k_delta, Direction(angle), s);
          });
    m.def("pushforward", &pushforward);
    m.def("correlation", &correlation);

    py::class_<MaximalResult>(m, "MaximalResult")
        .def_readonly("value", &MaximalResult::value)
        .def_readonly("delta", &MaximalResult::delta)
        .def_readonly("s", &MaximalResult::s)
        .def_readonly("binding_length", &MaximalResult::binding_length)
        .def_property_readonly("measure", [](const MaximalResult& r) { return r.measure; });

    m.def("maximal_value", [](const RasterSet& f, double angle, double delta, double s) {
        return maximal_value(f, Direction(angle), delta, s);
    });
    m.def("direction_sweep",
          [](const RasterSet& f, double delta, double s, int n_dirs, int threads) {
              const auto results = direction_sweep(f, delta, s, n_dirs, threads);
              std::vector<double> values;
              values.reserve(results.size());
              for (const auto& r : results) values.push_back(r.value);
              return values;
          },
          py::arg("f"), py::arg("delta"), py::arg("s"), py::arg("n_dirs"), py::arg("threads") = 0);

    m.def("run_experiment",
          [](const std::string& kind, const std::string& config_json, const std::string& out_dir,
             int threads) {
              ExperimentConfig cfg =
                  parse_experiment_config(nlohmann::json::parse(config_json), kind);
              cfg.threads = threads;
              cfg.out_dir = out_dir;
              ExperimentReport report;
              if (kind == "weaktype")
                  report = exp_weak_type(cfg);
              else if (kind == "correlation")
                  report = exp_correlation(cfg);
              else if (kind == "dichotomy")
                  report = exp_dichotomy(cfg);
              else if (kind == "chain")
                  report = exp_lower_bound_chain(cfg);
              else
                  throw std::invalid_argument("unknown experiment: " + kind);
              write_experiment_outputs(report, out_dir);
              py::dict out;
              out["passed"] = report.passed();
              py::list crit;
              for (const auto& c : report.criteria) {
                  py::dict d;
                  d["name"] = c.name;
                  d["passed"] = c.passed;
                  d["value"] = c.value;
                  d["threshold"] = c.threshold;
                  crit.append(d);
              }
              out["criteria"] = crit;
              return out;
          },
          py::arg("kind"), py::arg("config_json"), py::arg("out_dir"), py::arg("threads") = 0);
}
