#ifndef SHAPELAB_PARALLEL_HPP
#define SHAPELAB_PARALLEL_HPP

/// @file parallel.hpp
/// Interior parallel sets Omega(t) = {x : dist(x, boundary) > t} and the
/// area/perimeter profiles built on them.
///
/// The profile samples A(t) by node counting on a distance field, estimates
/// L(t) = -A'(t) two independent ways (finite differences of A, and the
/// contour length of the level set {d = t}), and exposes the structural
/// checks the profiles are expected to satisfy: concavity of the adjusted
/// area and the linear growth bound on L.  All tolerances scale with the
/// grid step so refining the grid tightens every check.

#include <vector>

#include "shapelab/distance_field.hpp"

namespace shapelab {

struct ParallelProfile {
    double h = 0.0;      // grid step of the sampled field
    double rho = 0.0;    // inradius estimate
    double delta = 0.0;  // sample spacing in t
    double alpha = 1.0;  // complement components seen by the grid, the
                         // unbounded one included (disc: 1, annulus: 2)
    double area0 = 0.0;  // counted area at t = 0
    double p_eff = 0.0;  // perimeter plus twice the slit length
    bool p_eff_exact = false;  // true when taken from geometry, not the grid

    std::vector<double> t;
    std::vector<double> area;
    std::vector<double> length_diff;     // -A'(t), central differences
    std::vector<double> length_contour;  // level-set contour length
    std::vector<double> g;               // L(t) - 2*pi*(alpha - 1)*t
    std::vector<std::uint8_t> low_confidence;

    int samples() const { return static_cast<int>(t.size()); }
};

/// Samples the profile at evenly spaced offsets t_i = i * rho / n, where n
/// is n_samples capped so the spacing never drops below the grid step
/// (sampling finer than the grid reads pure counting noise).  The final two
/// samples are always flagged low confidence (the counted sets there are a
/// handful of nodes), as is any sample where the two length estimators
/// disagree by more than 5 percent.
ParallelProfile profile(const DistanceField& field, int n_samples);

struct ConcavityCheck {
    bool pass = false;
    double worst = 0.0;      // largest undivided second difference
    double tolerance = 0.0;
    int worst_index = -1;
};

/// Concavity of phi(t) = -A(t) - (alpha - 1) * pi * t^2, the planar form of
/// the Sz. Nagy monotonicity.  Uses undivided second differences of phi on
/// consecutive retained samples: counting noise in A is of order h^(3/2),
/// so divided differences would drown the signal, while the undivided form
/// stays below tol = factor * h * p_eff / rho for genuinely concave phi.
ConcavityCheck check_concavity(const ParallelProfile& prof,
                               double tol_factor = 10.0);

struct PerimeterGrowthCheck {
    bool pass = false;
    double worst_excess = 0.0;  // largest L(t) - bound(t), negative when safe
    double tolerance = 0.0;
    int worst_index = -1;
};

/// Linear bound L(t) <= p_eff + 2*pi*(k - 1)*t on the retained samples, with
/// slack for the finite-difference noise in L.  k is the hole budget of the
/// class the domain is declared in, so k = 0 gives a decreasing bound (tight
/// for the disc) and k = 1 a constant one (tight for the annulus).  Requires
/// k at least the number of bounded complement components.
PerimeterGrowthCheck check_perimeter_growth(const ParallelProfile& prof,
                                            int k, double tol_rel = 0.05);

struct AreaBoundCheck {
    bool pass = false;
    double worst_excess = 0.0;  // largest A(t) - bound(t), negative when safe
    double tolerance = 0.0;
    int worst_index = -1;
};

/// Companion quadratic bound obtained by integrating the length bound:
/// A(t) <= p_eff * (rho - t) + pi * (k - 1) * (rho - t)^2.  Equality at
/// t = 0 for the disc (k = 0), so the slack covers the O(h) inradius bias.
AreaBoundCheck check_area_bound(const ParallelProfile& prof, int k,
                                double tol_rel = 0.02);

/// Torsion lower bound from the profile: integral of A(t)^2 / L(t) over the
/// retained range, by the trapezoid rule, with L taken from the contour
/// estimator (the difference estimator's noise would inflate a 1/L
/// average, breaking one-sidedness).  Dropping the flagged tail only
/// lowers the value, so the bound stays one-sided.  Throws
/// std::invalid_argument when a retained sample has a nonpositive L.
double parallel_trial_lower(const ParallelProfile& prof);

struct MinkowskiReport {
    std::vector<double> r;
    std::vector<double> two_sided;      // |{d <= r}| / (2r)   -> H1(boundary)
    std::vector<double> outer;          // |{d <= r} \ Omega| / r -> perimeter
    std::vector<double> inner_quotient; // (A(0) - A(r)) / r  -> p_eff
    double two_sided_limit = 0.0;       // linear extrapolation to r = 0
    double outer_limit = 0.0;
    double inner_limit = 0.0;
};

/// Two-sided and one-sided Minkowski content estimators around the boundary.
/// Needs the mask's source geometry for the exact distance on both sides;
/// the frame is padded by max(r) so outer tubes are never clipped.
MinkowskiReport minkowski_estimates(const RasterMask& mask,
                                    std::vector<double> r_values);

struct InnerParallelSet {
    double t = 0.0;
    double area = 0.0;
    double perimeter_estimate = 0.0;  // contour length of {d = t}
    TopologyReport topo;
    RasterMask mask;  // level-set mask; carries no geometry
};

/// Grid approximants of the inner parallel sets Omega(t) for each offset in
/// t_list.  Offsets below 2h are rejected: the level set would alias the
/// grid.  Offsets at or above the inradius are rejected as empty.
std::vector<InnerParallelSet> inner_parallel_approximants(
    const PlanarDomain& domain, const std::vector<double>& t_list, double h);

/// Total length of the level contour {d = level} by marching squares with
/// linear interpolation; saddles resolved by the cell-center average.
double contour_length(const DistanceField& field, double level);

}  // namespace shapelab

#endif
