#ifndef SHAPELAB_REPORT_HPP
#define SHAPELAB_REPORT_HPP

/// @file report.hpp
/// Uniform record for one checked inequality, oriented as lhs <= rhs.
/// `margin` is the slack rhs - lhs; `tolerance` is the relative slack
/// granted against the larger of the two sides, so solver-backed values
/// never fail on discretization noise alone.

#include <algorithm>
#include <cmath>
#include <string>

namespace shapelab {

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;  // relative
    bool pass = false;
    bool near_equality = false;
};

inline InequalityReport make_report(std::string name, double lhs, double rhs,
                                    double tolerance) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tolerance = tolerance;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    r.pass = r.margin >= -tolerance * scale;
    r.near_equality = std::abs(r.margin) <= tolerance * scale;
    return r;
}

}  // namespace shapelab

#endif
