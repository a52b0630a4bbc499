#pragma once

#include <string>
#include <vector>

#include "kakeya/io.hpp"
#include "kakeya/raster.hpp"
#include "kakeya/tube_measures.hpp"

namespace kakeya {

// Outline rendering of the thresholded raster (coverage >= 1/2): one path
// group whose subpaths are per-row runs of occupied cells; viewBox matches
// the grid.
std::string render_raster_svg(const RasterSet& raster);

// Overlay of tube measures at (possibly) distinct directions: per measure
// one group with tube strips and the occupied rectangles.
std::string render_measures_svg(const std::vector<TubeRectMeasure>& measures, const Vec2& lo,
                                const Vec2& hi);

// Horizontal strip colored by per-direction values in [0, vmax].
std::string render_heat_strip_svg(const std::vector<double>& values, double vmax,
                                  const std::string& label);

struct ScatterSeries {
    std::string label;
    std::string color;
    std::vector<double> xs, ys;
};

struct ScatterLine {
    std::string color;
    double slope = 0.0, intercept = 0.0;  // in log-log space
};

// log-log scatter with optional fitted reference lines.
std::string render_loglog_svg(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel, const std::vector<ScatterSeries>& series,
                              const std::vector<ScatterLine>& lines);

}  // namespace kakeya
