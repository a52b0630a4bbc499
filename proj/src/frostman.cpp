#include "kakeya/frostman.hpp"

#include <algorithm>
#include <cmath>

namespace kakeya {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

double StepMeasure1D::total_mass() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

double StepMeasure1D::interval_mass(double a, double b) const {
    if (b <= a || weights_.empty()) return 0.0;
    const long j0 = std::max(lo_, static_cast<long>(std::floor(a / delta_)));
    const long j1 = std::min(hi() - 1, static_cast<long>(std::floor(b / delta_)));
    double s = 0.0;
    for (long j = j0; j <= j1; ++j) {
        const double cell_lo = j * delta_;
        const double cell_hi = cell_lo + delta_;
        const double ov = std::min(b, cell_hi) - std::max(a, cell_lo);
        if (ov > 0.0) s += weights_[static_cast<size_t>(j - lo_)] * (ov / delta_);
    }
    return s;
}

StepMeasure1D StepMeasure1D::resample(double new_delta) const {
    if (weights_.empty()) return StepMeasure1D(new_delta, 0, {});
    const long k0 = static_cast<long>(std::floor(lo_ * delta_ / new_delta));
    const long k1 = static_cast<long>(std::ceil(hi() * delta_ / new_delta));
    std::vector<double> w(static_cast<size_t>(k1 - k0), 0.0);
    for (long k = k0; k < k1; ++k)
        w[static_cast<size_t>(k - k0)] = interval_mass(k * new_delta, (k + 1) * new_delta);
    return StepMeasure1D(new_delta, k0, std::move(w)).trimmed();
}

void StepMeasure1D::scale(double factor) {
    for (double& w : weights_) w *= factor;
}

StepMeasure1D StepMeasure1D::trimmed() const {
    size_t a = 0, b = weights_.size();
    while (a < b && weights_[a] == 0.0) ++a;
    while (b > a && weights_[b - 1] == 0.0) --b;
    return StepMeasure1D(delta_, lo_ + static_cast<long>(a),
                         std::vector<double>(weights_.begin() + a, weights_.begin() + b));
}

bool StepMeasure1D::trimmed_equal(const StepMeasure1D& o) const {
    const StepMeasure1D a = trimmed();
    const StepMeasure1D b = o.trimmed();
    return a.lo_ == b.lo_ && a.weights_ == b.weights_;
}

void CompactGridSet1D::normalize() {
    std::sort(occupied.begin(), occupied.end());
    occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
}

CompactGridSet1D snap_intervals_to_grid(const std::vector<std::pair<double, double>>& intervals,
                                        double delta) {
    CompactGridSet1D set;
    set.delta = delta;
    for (const auto& [a, b] : intervals) {
        const long j0 = static_cast<long>(std::floor(a / delta));
        const long j1 = static_cast<long>(std::ceil(b / delta));
        for (long j = j0; j < j1; ++j) {
            const double ov = std::min(b, (j + 1) * delta) - std::max(a, j * delta);
            if (ov >= 0.5 * delta * (1.0 - 1e-12)) set.occupied.push_back(j);
        }
    }
    set.normalize();
    return set;
}

StepMeasure1D frostman_build_1d(const CompactGridSet1D& set, double s) {
    if (set.empty()) throw std::invalid_argument("frostman_build_1d: empty support");
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("frostman_build_1d: s must be in (0,1]");

    std::vector<long> idx = set.occupied;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const long lo = idx.front();
    const long hi = idx.back() + 1;
    const long span = hi - lo;
    const double delta = set.delta;

    std::vector<double> w(static_cast<size_t>(span), 0.0);
    const double cell_mass = std::pow(delta, s);
    for (long j : idx) w[static_cast<size_t>(j - lo)] = cell_mass;

    for (int level = 1;; ++level) {
        const long block = 1L << level;
        const double cap = std::pow(block * delta, s);
        const long p0 = floor_div(lo, block);
        const long p1 = floor_div(hi - 1, block);
        for (long p = p0; p <= p1; ++p) {
            const long a = std::max(lo, p * block);
            const long b = std::min(hi, (p + 1) * block);
            double sum = 0.0;
            for (long j = a; j < b; ++j) sum += w[static_cast<size_t>(j - lo)];
            if (sum > cap) {
                const double f = cap / sum;
                for (long j = a; j < b; ++j) w[static_cast<size_t>(j - lo)] *= f;
            }
        }
        if (p0 == p1 && block >= span) break;
    }
    return StepMeasure1D(delta, lo, std::move(w)).trimmed();
}

double growth_ratio(const StepMeasure1D& mu, double s) {
    const StepMeasure1D m = mu.trimmed();
    const auto& w = m.weights();
    const size_t n = w.size();
    if (n == 0) return 0.0;
    std::vector<double> prefix(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w[i];
    std::vector<double> inv_len_s(n + 1, 0.0);
    for (size_t k = 1; k <= n; ++k) inv_len_s[k] = 1.0 / std::pow(k * m.delta(), s);
    double best = 0.0;
    for (size_t p = 0; p < n; ++p)
        for (size_t q = p + 1; q <= n; ++q)
            best = std::max(best, (prefix[q] - prefix[p]) * inv_len_s[q - p]);
    return best;
}

double interval_content(const CompactGridSet1D& set, double s) {
    if (set.empty()) return 0.0;
    std::vector<long> idx = set.occupied;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const size_t n = idx.size();
    if (n > (1u << 14)) throw std::invalid_argument("interval_content: support too large");
    std::vector<double> dp(n + 1, 0.0);
    for (size_t i = 1; i <= n; ++i) {
        double best = 1e300;
        for (size_t j = 1; j <= i; ++j) {
            const double len = (idx[i - 1] - idx[j - 1] + 1) * set.delta;
            best = std::min(best, dp[j - 1] + std::pow(len, s));
        }
        dp[i] = best;
    }
    return dp[n];
}

double CircleMeasure::total_mass() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
}

double CircleMeasure::ball_mass(double theta, double r) const {
    const double pi = std::numbers::pi;
    double s = 0.0;
    for (int j = 0; j < n_cells; ++j) {
        double d = std::abs(cell_center(j) - theta);
        d = std::min(d, pi - d);
        if (d <= r * (1.0 + 1e-12)) s += mass[static_cast<size_t>(j)];
    }
    return s;
}

CircleMeasure circle_frostman(const CircleArcSet& arcs, double t) {
    if (arcs.occupied.empty()) throw std::invalid_argument("circle_frostman: empty arc set");
    if (!(t < 1.0)) throw std::invalid_argument("circle_frostman: t must be < 1");
    const int n = arcs.n_cells;
    CircleMeasure sigma;
    sigma.n_cells = n;
    sigma.t = t;
    sigma.mass.assign(static_cast<size_t>(n), 0.0);

    const double width = sigma.cell_width();
    const double expo = 1.0 - t;
    for (int j : arcs.occupied) {
        if (j < 0 || j >= n) throw std::invalid_argument("circle_frostman: cell index out of range");
        sigma.mass[static_cast<size_t>(j)] = std::pow(width, expo);
    }

    for (long block = 2; block < 2L * n; block *= 2) {
        const double cap = std::pow(std::min<double>(block, n) * width, expo);
        for (long p = 0; p * block < n; ++p) {
            const long a = p * block;
            const long b = std::min<long>(n, (p + 1) * block);
            double sum = 0.0;
            for (long j = a; j < b; ++j) sum += sigma.mass[static_cast<size_t>(j)];
            if (sum > cap) {
                const double f = cap / sum;
                for (long j = a; j < b; ++j) sigma.mass[static_cast<size_t>(j)] *= f;
            }
        }
    }

    const double ratio = ball_growth_ratio(sigma, t);
    if (ratio > 1.0) {
        for (double& m : sigma.mass) m /= ratio;
    }
    return sigma;
}

double ball_growth_ratio(const CircleMeasure& sigma, double t) {
    const int n = sigma.n_cells;
    const double width = sigma.cell_width();
    const double expo = 1.0 - t;
    // circular prefix sums: ball of radius m*width about cell c covers
    // cells c-m .. c+m (wrapped)
    std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
    for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + sigma.mass[static_cast<size_t>(j)];
    const double total = prefix[static_cast<size_t>(n)];
    auto range_mass = [&](long a, long b) {  // cells a..b inclusive, wrapped
        if (b - a + 1 >= n) return total;
        a = ((a % n) + n) % n;
        b = ((b % n) + n) % n;
        if (a <= b) return prefix[b + 1] - prefix[a];
        return total - (prefix[a] - prefix[b + 1]);
    };
    double best = 0.0;
    const int max_m = n / 2;
    for (int c = 0; c < n; ++c) {
        for (int m = 1; m <= max_m; ++m) {
            const double r = m * width;
            const double ratio = range_mass(c - m, c + m) / std::pow(r, expo);
            best = std::max(best, ratio);
        }
    }
    return best;
}

RieszResult riesz_integral(const CircleMeasure& sigma, double s) {
    RieszResult res;
    res.may_diverge = (sigma.t >= s);
    const int n = sigma.n_cells;
    const double pi = std::numbers::pi;
    const double width = sigma.cell_width();
    const double self_term = std::pow(width, s - 1.0);
    // chord distance between cells separated by k steps
    std::vector<double> dist_pow(static_cast<size_t>(n), 0.0);
    for (int k = 1; k < n; ++k) {
        double d = std::abs(k * width);
        d = std::min(d, pi - d);
        dist_pow[static_cast<size_t>(k)] = std::pow(2.0 * std::sin(0.5 * d), s - 1.0);
    }
    double best = 0.0;
    for (int c = 0; c < n; ++c) {
        if (sigma.mass[static_cast<size_t>(c)] <= 0.0) continue;
        double sum = self_term * sigma.mass[static_cast<size_t>(c)];
        for (int j = 0; j < n; ++j) {
            if (j == c) continue;
            const double m = sigma.mass[static_cast<size_t>(j)];
            if (m <= 0.0) continue;
            sum += m * dist_pow[static_cast<size_t>(std::abs(j - c))];
        }
        best = std::max(best, sum);
    }
    res.value = best;
    return res;
}

}  // namespace kakeya
