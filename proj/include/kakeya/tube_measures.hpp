#pragma once

#include <map>

#include "kakeya/frostman.hpp"
#include "kakeya/geometry.hpp"
#include "kakeya/raster.hpp"

namespace kakeya {

// A weighted union of one delta x 1 rectangle per occupied tube:
//   mu = sum_j a_j * chi_{R_j},  R_j inside tube j of direction e.
// Valid instances satisfy the mass cap delta * sum a_j <= 1 and the
// projected growth condition mu_e(I) <= len(I)^s on grid intervals.
class TubeRectMeasure {
  public:
    struct Entry {
        double offset = 0.0;
        double weight = 0.0;
    };

    // Validating factory: throws std::invalid_argument when the mass cap or
    // the growth condition fails beyond tolerance 1e-9. With
    // `dyadic_growth_only` the growth check runs on aligned dyadic
    // intervals with allowance 4 (used above 512 tubes, where the solver
    // prunes its constraint set the same way).
    static TubeRectMeasure create(const Direction& e, double delta, double s,
                                  std::map<long, Entry> entries, bool dyadic_growth_only = false);

    const Direction& direction() const { return e_; }
    double delta() const { return delta_; }
    double s() const { return s_; }
    const std::map<long, Entry>& entries() const { return entries_; }

    double mass() const;  // delta * sum of weights
    RectSpec rect(long tube_index) const;

    // sum_cells coverage(f over R_j) * a_j via exact polygon clipping
    double integral_against(const RasterSet& f) const;

    TubeRectMeasure() = default;  // the empty measure (trivially valid)

  private:
    Direction e_;
    double delta_ = 0.0;
    double s_ = 0.0;
    std::map<long, Entry> entries_;
};

// Projection rho_e#(mu): cell j of width delta receives mass delta * a_j.
StepMeasure1D pushforward(const TubeRectMeasure& mu);

// nu = (1/10) * resample(nu_tilde onto the delta grid): cell masses
// nu_tilde(cell)/10. The 1/10 turns the s-growth of nu_tilde (dyadic
// slack included) into growth ratio <= 1.
StepMeasure1D discretize_frostman(const StepMeasure1D& nu_tilde, double delta);

// For every cell of nu with positive mass, place the rectangle of tube j
// fully contained in k_delta with the smallest offset, weighted
// nu(cell)/delta. Throws LiftError listing tubes that admit no rectangle.
// The result is validated as an (e, delta, s) tube measure.
TubeRectMeasure lift_to_rectangles(const StepMeasure1D& nu, const RasterSet& k_delta,
                                   const Direction& e, double s);

// Exact correlation integral(mu1 * mu2 dx) = sum a_i a_j area(R_i cap R_j),
// restricted to pairs whose projection intervals meet.
double correlation(const TubeRectMeasure& mu1, const TubeRectMeasure& mu2);

// Independent check: rasterize both measures as densities on g and return
// h^2 * sum of the pointwise product.
double correlation_raster(const TubeRectMeasure& mu1, const TubeRectMeasure& mu2,
                          const GridSpec& g);

// Rasterized density sum_j a_j chi_{R_j} accumulated on g.
RasterSet measure_density(const TubeRectMeasure& mu, const GridSpec& g);

// CSV serialization (columns j, offset, weight); direction, delta and s
// travel in a JSON sidecar next to the file.
std::string measure_to_csv(const TubeRectMeasure& mu);
TubeRectMeasure measure_from_csv(const std::string& csv, double direction_angle, double delta,
                                 double s);

}  // namespace kakeya
