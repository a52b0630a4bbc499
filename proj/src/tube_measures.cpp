#include "kakeya/tube_measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kakeya/io.hpp"
#include "kakeya/rotgrid.hpp"

namespace kakeya {

namespace {

// growth_ratio over aligned dyadic intervals only
double dyadic_growth_ratio(const StepMeasure1D& mu, double s) {
    const StepMeasure1D m = mu.trimmed();
    const auto& w = m.weights();
    const long n = static_cast<long>(w.size());
    if (n == 0) return 0.0;
    double best = 0.0;
    for (long block = 1; block < 2 * n; block *= 2) {
        const double cap = std::pow(block * m.delta(), s);
        const long lo = m.lo();
        long p = lo >= 0 ? lo / block : (lo - block + 1) / block;
        for (; p * block < m.hi(); ++p) {
            double sum = 0.0;
            const long a = std::max(lo, p * block);
            const long b = std::min(m.hi(), (p + 1) * block);
            for (long j = a; j < b; ++j) sum += w[static_cast<size_t>(j - lo)];
            best = std::max(best, sum / cap);
        }
    }
    return best;
}

}  // namespace

TubeRectMeasure TubeRectMeasure::create(const Direction& e, double delta, double s,
                                        std::map<long, Entry> entries, bool dyadic_growth_only) {
    if (!(delta > 0.0)) throw std::invalid_argument("tube measure: delta must be positive");
    TubeRectMeasure mu;
    mu.e_ = e;
    mu.delta_ = delta;
    mu.s_ = s;
    mu.entries_ = std::move(entries);
    for (auto it = mu.entries_.begin(); it != mu.entries_.end();) {
        if (it->second.weight < 0.0)
            throw std::invalid_argument("tube measure: negative weight");
        if (it->second.weight == 0.0)
            it = mu.entries_.erase(it);
        else
            ++it;
    }

    const double tol = 1e-9;
    const double total = mu.mass();
    if (total > 1.0 + tol) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "tube measure: mass %.12g exceeds the unit cap", total);
        throw std::invalid_argument(buf);
    }
    const StepMeasure1D proj = pushforward(mu);
    const double ratio =
        dyadic_growth_only ? dyadic_growth_ratio(proj, s) : growth_ratio(proj, s);
    const double allowance = dyadic_growth_only ? kDyadicSlack : 1.0;
    if (ratio > allowance + tol) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "tube measure: growth ratio %.12g exceeds %.3g", ratio,
                      allowance);
        throw std::invalid_argument(buf);
    }
    return mu;
}

double TubeRectMeasure::mass() const {
    double sum = 0.0;
    for (const auto& [j, entry] : entries_) sum += entry.weight;
    return delta_ * sum;
}

RectSpec TubeRectMeasure::rect(long tube_index) const {
    const auto it = entries_.find(tube_index);
    if (it == entries_.end()) throw std::invalid_argument("tube measure: no rectangle in tube");
    return RectSpec{TubeId{e_, delta_, tube_index}, it->second.offset};
}

double TubeRectMeasure::integral_against(const RasterSet& f) const {
    // exact against the piecewise-constant raster: per-cell rectangle
    // coverage times the cell value
    const RasterSet density = measure_density(*this, f.grid());
    const auto& d = density.coverage();
    const auto& v = f.coverage();
    double total = 0.0;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0.0) total += d[i] * v[i];
    return total * f.grid().h() * f.grid().h();
}

StepMeasure1D pushforward(const TubeRectMeasure& mu) {
    if (mu.entries().empty()) return StepMeasure1D(mu.delta(), 0, {});
    const long lo = mu.entries().begin()->first;
    const long hi = mu.entries().rbegin()->first + 1;
    std::vector<double> w(static_cast<size_t>(hi - lo), 0.0);
    for (const auto& [j, entry] : mu.entries())
        w[static_cast<size_t>(j - lo)] = mu.delta() * entry.weight;
    return StepMeasure1D(mu.delta(), lo, std::move(w));
}

StepMeasure1D discretize_frostman(const StepMeasure1D& nu_tilde, double delta) {
    StepMeasure1D nu = nu_tilde.resample(delta);
    nu.scale(0.1);
    return nu;
}

TubeRectMeasure lift_to_rectangles(const StepMeasure1D& nu, const RasterSet& k_delta,
                                   const Direction& e, double s) {
    const double delta = nu.delta();
    const double h = k_delta.grid().h();
    if (h > delta / 4.0 * (1.0 + 1e-12))
        throw std::invalid_argument("lift_to_rectangles: raster too coarse (need h <= delta/4)");

    const RotatedGrid rg(k_delta, e, delta, /*need_sum=*/false, /*need_occ=*/true);
    std::map<long, TubeRectMeasure::Entry> entries;
    std::vector<long> failed;
    for (long j = nu.lo(); j < nu.hi(); ++j) {
        const double m = nu.cell_mass(j);
        if (m <= 0.0) continue;
        const int r = rg.first_inside_offset(j);
        if (r < 0) {
            failed.push_back(j);
            continue;
        }
        entries[j] = {rg.offset_at(r), m / delta};
    }
    if (!failed.empty()) {
        std::string msg = "lift_to_rectangles: no contained rectangle in tubes";
        for (long j : failed) msg += " " + std::to_string(j);
        throw LiftError(msg, std::move(failed));
    }
    const bool dyadic_only = nu.hi() - nu.lo() > 512;
    return TubeRectMeasure::create(e, delta, s, std::move(entries), dyadic_only);
}

double correlation(const TubeRectMeasure& mu1, const TubeRectMeasure& mu2) {
    if (mu1.entries().empty() || mu2.entries().empty()) return 0.0;
    const double d1 = mu1.delta();
    double total = 0.0;
    for (const auto& [j, e2] : mu2.entries()) {
        const RectSpec r2 = mu2.rect(j);
        const Interval proj = projection_interval(mu1.direction(), r2);
        const long i0 = static_cast<long>(std::floor(proj.lo / d1)) - 1;
        const long i1 = static_cast<long>(std::floor(proj.hi / d1)) + 1;
        auto it = mu1.entries().lower_bound(i0);
        const auto end = mu1.entries().upper_bound(i1);
        for (; it != end; ++it) {
            const double area = rect_intersection_area(mu1.rect(it->first), r2);
            if (area > 0.0) total += it->second.weight * e2.weight * area;
        }
    }
    return total;
}

RasterSet measure_density(const TubeRectMeasure& mu, const GridSpec& g) {
    RasterSet density(g);
    for (const auto& [j, entry] : mu.entries()) {
        const auto cs = mu.rect(j).corners();
        add_convex_polygon_coverage({cs.begin(), cs.end()}, entry.weight, density);
    }
    return density;
}

std::string measure_to_csv(const TubeRectMeasure& mu) {
    CsvWriter csv({"j", "offset", "weight"});
    for (const auto& [j, entry] : mu.entries())
        csv.row({static_cast<double>(j), entry.offset, entry.weight});
    return csv.str();
}

TubeRectMeasure measure_from_csv(const std::string& csv, double direction_angle, double delta,
                                 double s) {
    std::map<long, TubeRectMeasure::Entry> entries;
    size_t pos = csv.find('\n');
    if (pos == std::string::npos) throw std::invalid_argument("measure csv: missing header");
    ++pos;
    while (pos < csv.size()) {
        size_t eol = csv.find('\n', pos);
        if (eol == std::string::npos) eol = csv.size();
        std::string line = csv.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        pos = eol + 1;
        if (line.empty()) continue;
        long j = 0;
        double offset = 0.0, weight = 0.0;
        if (std::sscanf(line.c_str(), "%ld,%lf,%lf", &j, &offset, &weight) != 3)
            throw std::invalid_argument("measure csv: malformed row \"" + line + "\"");
        entries[j] = {offset, weight};
    }
    return TubeRectMeasure::create(Direction(direction_angle), delta, s, std::move(entries));
}

double correlation_raster(const TubeRectMeasure& mu1, const TubeRectMeasure& mu2,
                          const GridSpec& g) {
    const RasterSet d1 = measure_density(mu1, g);
    const RasterSet d2 = measure_density(mu2, g);
    double total = 0.0;
    const auto& a = d1.coverage();
    const auto& b = d2.coverage();
    for (size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
    return total * g.h() * g.h();
}

}  // namespace kakeya
