#ifndef SHAPELAB_OPTIMIZE_HPP
#define SHAPELAB_OPTIMIZE_HPP

/// @file optimize.hpp
/// Derivative-free minimization of F_q over star-shaped domains with
/// optional round holes.
///
/// Shapes are radial Fourier graphs r(theta) = a0 + sum_j (a_j cos + b_j sin),
/// polygonized with a fixed vertex count, plus up to k circular holes.
/// Infeasible decodes (collapsing radius, holes leaving the shape) map to a
/// large sentinel objective instead of exceptions, so the simplex can walk
/// through them.  The search runs on a coarse grid; the distinct leaders it
/// saw are re-measured on a fine grid with two-grid extrapolation, and the
/// fine winner is reported.  Every coarse objective call lands in the
/// history, making runs reproducible byte for byte at a fixed seed.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapelab/geometry.hpp"

namespace shapelab {

struct ShapeParams {
    double a0 = 1.0;
    std::vector<double> cos_coeff;  // a_1 .. a_J
    std::vector<double> sin_coeff;  // b_1 .. b_J
    struct Hole {
        double x = 0.0;
        double y = 0.0;
        double r = 0.0;
    };
    std::vector<Hole> holes;
};

struct DecodeOutcome {
    std::optional<PlanarDomain> domain;
    std::string reason;  // set when infeasible
};

/// Polygonizes the parameters; flags geometric violations instead of
/// throwing.  The radius must stay above 0.02 * a0 everywhere, holes must
/// keep that margin from the outer curve and from each other.
DecodeOutcome decode_shape(const ShapeParams& params, int vertices = 512);

/// F_q of the decoded shape at grid step h, or the infeasibility sentinel.
/// On a sentinel return, `diagnostic` (when given) carries the reason; solver
/// breakdowns are prefixed "solver:".
constexpr double kInfeasibleObjective = 1e6;
double objective_value(const ShapeParams& params, double q, double h,
                       double rel_tol = 1e-6, int vertices = 512,
                       std::string* diagnostic = nullptr);

/// Same objective with two-grid extrapolated torsion (solves at h and h/2),
/// the yardstick used for finalists.
double objective_value_extrapolated(const ShapeParams& params, double q,
                                    double h, int vertices = 512);

struct OptimizationConfig {
    double q = 0.45;
    int k = 0;          // holes carried by the parametrization
    int budget = 2000;  // objective evaluations on the coarse grid
    std::uint64_t seed = 1;
    double h_coarse = 1.0 / 32;
    double h_fine = 1.0 / 96;
    int modes = 8;
    int vertices = 512;
    double rel_tol = 1e-6;
    double restart_tol = 1e-7;  // relative simplex flatness triggering restart
};

struct EvalRecord {
    double value = 0.0;
    bool feasible = false;
};

/// Thrown when the evaluation budget runs out before any feasible decode,
/// with the evaluations made so far attached.
class NoFeasiblePoint : public std::runtime_error {
public:
    NoFeasiblePoint(const std::string& what, std::vector<EvalRecord> history)
        : std::runtime_error(what), history(std::move(history)) {}
    std::vector<EvalRecord> history;
};

struct OptimizationRun {
    OptimizationConfig config;
    ShapeParams initial;
    ShapeParams best;
    double initial_fine = 0.0;
    double best_coarse = 0.0;
    double best_fine = 0.0;
    std::vector<EvalRecord> history;  // every coarse evaluation, in order
    double universal_bound = 0.0;     // scale-free lower bound for (q, k)
    double gap = 0.0;                 // best_fine - universal_bound
    bool bound_violation = false;     // a feasible value undercut the bound
    int restarts = 0;
    int infeasible_count = 0;
    int solver_failures = 0;
};

/// Nelder-Mead from the given start (default: unit disc, plus k small holes
/// on a ring when k > 0).  Runs until the evaluation budget is exhausted,
/// restarting around the incumbent whenever the simplex flattens out.
OptimizationRun optimize_shape(const OptimizationConfig& config,
                               const std::optional<ShapeParams>& start = {});

/// Generic Nelder-Mead core, exposed for testing: minimizes fn over R^dim
/// from x0 with per-coordinate initial steps.  Returns the best point found
/// after exactly `budget` evaluations (or earlier if budget < dim + 1).
struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    int restarts = 0;
};
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                          const std::vector<double>& x0,
                          const std::vector<double>& steps, int budget,
                          double restart_tol, std::uint64_t seed);

}  // namespace shapelab

#endif
