#include "kakeya/fit.hpp"

#include <algorithm>
#include <cmath>

namespace kakeya {

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit fit;
    const int n = static_cast<int>(std::min(xs.size(), ys.size()));
    fit.n = n;
    if (n < 2) return fit;
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        rss += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - rss / syy : 1.0;
    if (n > 2) fit.stderr_slope = std::sqrt(rss / (n - 2) / sxx);
    return fit;
}

LineFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    const size_t n = std::min(xs.size(), ys.size());
    lx.reserve(n);
    ly.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    return fit_line(lx, ly);
}

LineFit envelope_slope(const std::vector<double>& xs, const std::vector<double>& ys, int bins) {
    double xmin = 0.0, xmax = 0.0;
    bool any = false;
    const size_t n = std::min(xs.size(), ys.size());
    for (size_t i = 0; i < n; ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            if (!any) {
                xmin = xmax = xs[i];
                any = true;
            } else {
                xmin = std::min(xmin, xs[i]);
                xmax = std::max(xmax, xs[i]);
            }
        }
    }
    if (!any || xmin == xmax || bins < 2) return {};
    const double lmin = std::log(xmin), lmax = std::log(xmax);
    std::vector<double> bx(static_cast<size_t>(bins), 0.0), by(static_cast<size_t>(bins), 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0 && ys[i] > 0.0)) continue;
        int b = static_cast<int>((std::log(xs[i]) - lmin) / (lmax - lmin) * bins);
        b = std::clamp(b, 0, bins - 1);
        if (ys[i] > by[static_cast<size_t>(b)]) {
            by[static_cast<size_t>(b)] = ys[i];
            bx[static_cast<size_t>(b)] = xs[i];
        }
    }
    std::vector<double> fx, fy;
    for (int b = 0; b < bins; ++b) {
        if (by[static_cast<size_t>(b)] > 0.0) {
            fx.push_back(bx[static_cast<size_t>(b)]);
            fy.push_back(by[static_cast<size_t>(b)]);
        }
    }
    return fit_loglog(fx, fy);
}

}  // namespace kakeya
