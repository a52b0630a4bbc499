#include "kakeya/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace kakeya {

std::string render_raster_svg(const RasterSet& raster) {
    const GridSpec& g = raster.grid();
    const int n = raster.n();
    const double h = g.h();
    SvgDoc doc(512, 512, g.origin.x, g.origin.y, g.side, g.side);
    doc.rect(g.origin.x, g.origin.y, g.side, g.side, "fill=\"white\" stroke=\"none\"");
    doc.open_group("fill=\"#1f4e79\" stroke=\"none\"");
    std::string d;
    for (int iy = 0; iy < n; ++iy) {
        // svg y grows downward: flip rows
        const double y = g.origin.y + g.side - (iy + 1) * h;
        int ix = 0;
        while (ix < n) {
            if (raster.at(ix, iy) >= 0.5) {
                int run = ix;
                while (run < n && raster.at(run, iy) >= 0.5) ++run;
                const double x = g.origin.x + ix * h;
                d += "M" + SvgDoc::fmt(x) + " " + SvgDoc::fmt(y);
                d += " h" + SvgDoc::fmt((run - ix) * h);
                d += " v" + SvgDoc::fmt(h);
                d += " h" + SvgDoc::fmt(-(run - ix) * h);
                d += " Z ";
                ix = run;
            } else {
                ++ix;
            }
        }
    }
    if (!d.empty()) doc.raw("<path d=\"" + d + "\"/>\n");
    doc.close_group();
    return doc.finish();
}

std::string render_measures_svg(const std::vector<TubeRectMeasure>& measures, const Vec2& lo,
                                const Vec2& hi) {
    static const char* kFills[] = {"#c23b22", "#2b6fb3", "#3f8f4f", "#8856a7"};
    const double w = hi.x - lo.x, h = hi.y - lo.y;
    SvgDoc doc(560, 560 * h / std::max(w, 1e-9), lo.x, -hi.y, w, h);
    doc.rect(lo.x, -hi.y, w, h, "fill=\"white\" stroke=\"#999\" stroke-width=\"0.002\"");
    int idx = 0;
    for (const auto& mu : measures) {
        const char* color = kFills[idx % 4];
        // tube strips
        doc.open_group("fill=\"none\" stroke=\"" + std::string(color) +
                       "\" stroke-opacity=\"0.35\" stroke-width=\"0.0015\"");
        const Vec2 u = mu.direction().unit();
        const Vec2 vax = mu.direction().perp();
        const double ext = std::hypot(w, h);
        for (const auto& [j, entry] : mu.entries()) {
            for (int edge = 0; edge <= 1; ++edge) {
                const double upos = (j + edge) * mu.delta();
                const Vec2 a = u * upos + vax * (entry.offset - ext);
                const Vec2 b = u * upos + vax * (entry.offset + 1.0 + ext);
                doc.line(a.x, -a.y, b.x, -b.y, "");
            }
        }
        doc.close_group();
        // rectangles, opacity by normalized weight
        double wmax = 0.0;
        for (const auto& [j, entry] : mu.entries()) wmax = std::max(wmax, entry.weight);
        doc.open_group("fill=\"" + std::string(color) + "\" stroke=\"" + color +
                       "\" stroke-width=\"0.001\"");
        for (const auto& [j, entry] : mu.entries()) {
            const auto cs = mu.rect(j).corners();
            std::vector<Vec2> pts;
            for (const Vec2& p : cs) pts.push_back({p.x, -p.y});
            const double op = wmax > 0.0 ? 0.25 + 0.6 * entry.weight / wmax : 0.5;
            doc.path(pts, true, "fill-opacity=\"" + SvgDoc::fmt(op) + "\"");
        }
        doc.close_group();
        ++idx;
    }
    return doc.finish();
}

std::string render_heat_strip_svg(const std::vector<double>& values, double vmax,
                                  const std::string& label) {
    const int n = static_cast<int>(values.size());
    const double cell = 8.0;
    SvgDoc doc(n * cell, 48, 0, 0, n * cell, 48);
    doc.rect(0, 0, n * cell, 48, "fill=\"white\" stroke=\"none\"");
    doc.open_group("stroke=\"none\"");
    for (int i = 0; i < n; ++i) {
        const double t = vmax > 0.0 ? std::clamp(values[static_cast<size_t>(i)] / vmax, 0.0, 1.0)
                                    : 0.0;
        const int level = static_cast<int>(std::lround(255.0 * (1.0 - t)));
        char color[16];
        std::snprintf(color, sizeof(color), "#%02x%02x%02x", level, level, 255 - (255 - level) / 2);
        doc.rect(i * cell, 8, cell, 24, std::string("fill=\"") + color + "\"");
    }
    doc.close_group();
    doc.text(2, 44, label, "font-family=\"monospace\" font-size=\"9\" fill=\"#333\"");
    return doc.finish();
}

std::string render_loglog_svg(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel, const std::vector<ScatterSeries>& series,
                              const std::vector<ScatterLine>& lines) {
    const double W = 520, H = 390, L = 60, R = 20, T = 30, B = 46;
    double lxmin = 0, lxmax = 0, lymin = 0, lymax = 0;
    bool any = false;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!(s.xs[i] > 0.0 && s.ys[i] > 0.0)) continue;
            const double lx = std::log10(s.xs[i]), ly = std::log10(s.ys[i]);
            if (!any) {
                lxmin = lxmax = lx;
                lymin = lymax = ly;
                any = true;
            } else {
                lxmin = std::min(lxmin, lx);
                lxmax = std::max(lxmax, lx);
                lymin = std::min(lymin, ly);
                lymax = std::max(lymax, ly);
            }
        }
    }
    if (!any) {
        lxmin = lymin = -1;
        lxmax = lymax = 1;
    }
    if (lxmax - lxmin < 1e-9) {
        lxmin -= 0.5;
        lxmax += 0.5;
    }
    if (lymax - lymin < 1e-9) {
        lymin -= 0.5;
        lymax += 0.5;
    }
    const double padx = 0.06 * (lxmax - lxmin), pady = 0.08 * (lymax - lymin);
    lxmin -= padx;
    lxmax += padx;
    lymin -= pady;
    lymax += pady;

    auto px = [&](double lx) { return L + (lx - lxmin) / (lxmax - lxmin) * (W - L - R); };
    auto py = [&](double ly) { return H - B - (ly - lymin) / (lymax - lymin) * (H - T - B); };

    SvgDoc doc(W, H, 0, 0, W, H);
    doc.rect(0, 0, W, H, "fill=\"white\" stroke=\"none\"");
    doc.rect(L, T, W - L - R, H - T - B, "fill=\"none\" stroke=\"#444\" stroke-width=\"1\"");
    doc.text(L, T - 10, title, "font-family=\"monospace\" font-size=\"12\" fill=\"#111\"");
    doc.text(W / 2 - 30, H - 10, xlabel + " (log10)",
             "font-family=\"monospace\" font-size=\"10\" fill=\"#333\"");
    doc.text(8, T - 10, ylabel + " (log10)",
             "font-family=\"monospace\" font-size=\"10\" fill=\"#333\"");

    // decade ticks
    doc.open_group("stroke=\"#bbb\" stroke-width=\"0.5\"");
    for (int d = static_cast<int>(std::ceil(lxmin)); d <= static_cast<int>(std::floor(lxmax)); ++d)
        doc.line(px(d), T, px(d), H - B, "");
    for (int d = static_cast<int>(std::ceil(lymin)); d <= static_cast<int>(std::floor(lymax)); ++d)
        doc.line(L, py(d), W - R, py(d), "");
    doc.close_group();
    doc.open_group("font-family=\"monospace\" font-size=\"9\" fill=\"#333\"");
    for (int d = static_cast<int>(std::ceil(lxmin)); d <= static_cast<int>(std::floor(lxmax)); ++d)
        doc.text(px(d) - 8, H - B + 12, std::to_string(d), "");
    for (int d = static_cast<int>(std::ceil(lymin)); d <= static_cast<int>(std::floor(lymax)); ++d)
        doc.text(L - 22, py(d) + 3, std::to_string(d), "");
    doc.close_group();

    for (const auto& ln : lines) {
        // y = slope*x + intercept in natural-log space; convert to log10
        const double l10 = std::log(10.0);
        auto ly_at = [&](double lx) { return (ln.slope * (lx * l10) + ln.intercept) / l10; };
        doc.line(px(lxmin), py(ly_at(lxmin)), px(lxmax), py(ly_at(lxmax)),
                 "stroke=\"" + ln.color + "\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
    }

    double legend_y = T + 14;
    for (const auto& s : series) {
        doc.open_group("fill=\"" + s.color + "\" stroke=\"none\"");
        for (size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!(s.xs[i] > 0.0 && s.ys[i] > 0.0)) continue;
            doc.circle(px(std::log10(s.xs[i])), py(std::log10(s.ys[i])), 2.2, "fill-opacity=\"0.75\"");
        }
        doc.close_group();
        doc.circle(W - R - 110, legend_y - 3, 3, "fill=\"" + s.color + "\"");
        doc.text(W - R - 100, legend_y, s.label,
                 "font-family=\"monospace\" font-size=\"9\" fill=\"#333\"");
        legend_y += 13;
    }
    return doc.finish();
}

}  // namespace kakeya
