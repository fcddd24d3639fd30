#ifndef SHAPELAB_TORSION_HPP
#define SHAPELAB_TORSION_HPP

/// @file torsion.hpp
/// Torsional rigidity T(Omega) = integral of u, where -Laplace(u) = 1 with
/// u = 0 on the boundary.
///
/// Discretization: 5-point Laplacian on the interior nodes of a mask, with
/// homogeneous Dirichlet data on outside nodes and across slit-blocked
/// edges.  The symmetric positive definite system is solved by conjugate
/// gradients with an SSOR preconditioner; stopping is on the relative
/// two-norm residual.  T is the midpoint-rule sum h^2 * sum(u).
///
/// The plain scheme carries an O(h) boundary error from node-counted
/// geometry, so a two-grid Richardson step (2*T(h/2) - T(h)) is the default
/// route to mesh-converged values.  The coarse solution prolongs to warm
/// start the fine solve.

#include <stdexcept>
#include <string>
#include <vector>

#include "shapelab/geometry.hpp"
#include "shapelab/raster.hpp"

namespace shapelab {

struct SolverOptions {
    double rel_tol = 1e-8;
    int max_iterations = 0;  // 0: scale with the grid side
    double omega = 1.8;      // SSOR relaxation factor, in (0, 2)
    const std::vector<double>* initial_guess = nullptr;  // full-grid layout
};

struct TorsionSolution {
    double T = 0.0;
    double h = 0.0;
    int iterations = 0;
    double rel_residual = 0.0;
    std::vector<double> u;  // full-grid layout, 0 on outside nodes
};

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, int iterations, double rel_residual)
        : std::runtime_error(what),
          iterations(iterations),
          rel_residual(rel_residual) {}
    int iterations;
    double rel_residual;
};

/// Solves the torsion problem on one mask.  Throws SolverFailure when the
/// iteration cap is exhausted before reaching rel_tol.
TorsionSolution solve_torsion(const RasterMask& mask,
                              const SolverOptions& options = {});

struct RichardsonTorsion {
    double h = 0.0;              // coarse step; the fine grid uses h/2
    double T_coarse = 0.0;
    double T_fine = 0.0;
    double T_extrapolated = 0.0;
    int coarse_iterations = 0;
    TorsionSolution fine;
};

RichardsonTorsion richardson_torsion(const PlanarDomain& domain, double h,
                                     const SolverOptions& options = {});

/// Bilinear prolongation of a coarse full-grid field onto a fine mask.
/// Grids must be node-aligned (both anchored at multiples of their step).
std::vector<double> prolong(const RasterMask& coarse,
                            const std::vector<double>& u_coarse,
                            const RasterMask& fine);

/// Variational lower bound from any nonnegative trial field on the mask:
/// (h^2 sum u)^2 / sum of squared differences, where wall and blocked
/// interfaces contribute u^2 against zero.  Evaluated on the discrete
/// solution it reproduces T exactly.  Throws std::invalid_argument on an
/// identically zero trial.
double rayleigh_lower(const RasterMask& mask, const std::vector<double>& u);

// Closed forms for calibration.
double disc_torsion(double radius);
double annulus_torsion(double inner, double outer);
/// Classical separated-series value for an a-by-b rectangle.
double rectangle_torsion(double a, double b);

struct ParallelProfile;

struct TorsionBounds {
    double T_parallel_lb = 0.0;  // quadrature of A^2 / L over the profile
    double T_polya_lb = 0.0;     // |Omega|^3 / (3 * D_k^2)
    double D_k = 0.0;            // p_eff plus the clamped 2*pi*(k-1)*rho term
};

/// Chained lower bounds for T from the parallel profile of a domain in the
/// class with k holes: T_polya_lb <= T_parallel_lb <= T.  The width term
/// 2*pi*(k-1)*rho is clamped at zero for k <= 1, where the plain p_eff
/// denominator is the valid (and for the disc, necessary) form.
TorsionBounds torsion_bounds(const ParallelProfile& profile,
                             const MeasureReport& measure, int k);

}  // namespace shapelab

#endif
