#pragma once

#include <vector>

namespace kakeya {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    int n = 0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// OLS on (log x, log y); pairs with a nonpositive coordinate are dropped.
LineFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

// Upper-envelope slope: bin x into log-spaced bins, keep the max y per bin,
// fit log-log through the bin maxima.
LineFit envelope_slope(const std::vector<double>& xs, const std::vector<double>& ys, int bins);

}  // namespace kakeya
