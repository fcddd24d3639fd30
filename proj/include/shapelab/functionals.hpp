#ifndef SHAPELAB_FUNCTIONALS_HPP
#define SHAPELAB_FUNCTIONALS_HPP

/// @file functionals.hpp
/// The scaling-free shape functional F_q = P * T^q / |Omega|^(2q + 1/2) and
/// the inequality suite around it.
///
/// F_q uses the distributional perimeter P.  The relaxed variant used on
/// domains with slits replaces P by the relaxed perimeter, which is only
/// known to lie in [H1(boundary), P + 2 * slit length]; evaluate() returns
/// both ends of that bracket.  Everything here is algebra over measured
/// inputs: the torsion value T is whatever the caller trusts (solver,
/// extrapolation, oracle).

#include <optional>
#include <vector>

#include "shapelab/geometry.hpp"
#include "shapelab/report.hpp"

namespace shapelab {

struct FunctionalValue {
    double q = 0.5;
    int k = 0;  // cap on bounded complement components for the relaxed view
    double T = 0.0;
    double area = 0.0;
    double perimeter = 0.0;
    double boundary_h1 = 0.0;
    double slit_length = 0.0;
    double F_q = 0.0;
    double F_qk_lower = 0.0;
    double F_qk_upper = 0.0;
};

/// Preconditions: q > 0, T > 0, positive area.
FunctionalValue evaluate(const MeasureReport& m, double T, double q, int k);

/// Scale-free lower bound for F_q over domains with at most k bounded
/// complement components, valid for q <= 1/2.
double universal_lower_bound(double q, int k);

/// P / sqrt(|Omega|) >= 2 sqrt(pi); the near-equality flag is the disc
/// detector.  The default tolerance absorbs the polygonization defect of a
/// few-hundred-vertex disc, which sits near 1e-5 relative.
InequalityReport isoperimetric(const MeasureReport& m,
                               double tolerance = 1e-4);

/// T / |Omega|^2 <= 1/(8 pi), with equality exactly on discs.
InequalityReport saint_venant(const MeasureReport& m, double T,
                              double tolerance = 0.02);

/// Torsion lower bounds A^3 / (3 D^2) <= T for two widths D, both with the
/// 2 pi (k-1) rho term clamped to zero for k <= 1: "polya_width" uses
/// D = p_eff = P + 2 * slit length, "polya_boundary" uses D = 2 H1 - P.
/// The two coincide on domains whose H1 splits as P + slit length.
std::vector<InequalityReport> polya_reports(const MeasureReport& m, double T,
                                            double rho, int k,
                                            double tolerance = 0.02);

/// Lower bounds on F_{1/2} by boundary ratios, from the same parallel-set
/// machinery.  The denominator switches at k = 2.
InequalityReport f_half_report(const MeasureReport& m, double T, int k,
                               double tolerance = 0.02);

/// F_q against the universal constant bound.  Only meaningful on slit-free
/// domains (the bound needs a Lipschitz boundary); returns nothing when the
/// domain carries slits.
std::optional<InequalityReport> universal_bound_report(
    const FunctionalValue& value, double tolerance = 0.02);

/// Purely geometric inequalities: the Bonnesen-type area bound
/// |Omega| <= (2 H1 - P + pi (k-1) rho) rho with the k-1 factor taken
/// literally (k = 0 tightens the bound and is exact on the disc), and the
/// inscribed-disc bound 2 pi rho <= P.
std::vector<InequalityReport> geometric_reports(const MeasureReport& m,
                                                double rho, int k,
                                                double tolerance = 0.01);

}  // namespace shapelab

#endif
