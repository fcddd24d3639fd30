#include "shapelab/functionals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shapelab {

namespace {
constexpr double kPi = std::numbers::pi;
}

FunctionalValue evaluate(const MeasureReport& m, double T, double q, int k) {
    if (!(q > 0.0)) throw std::invalid_argument("evaluate: q must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("evaluate: T must be positive");
    if (!(m.area > 0.0)) throw std::invalid_argument("evaluate: empty domain");
    if (k < 0) throw std::invalid_argument("evaluate: k must be nonnegative");

    FunctionalValue v;
    v.q = q;
    v.k = k;
    v.T = T;
    v.area = m.area;
    v.perimeter = m.perimeter;
    v.boundary_h1 = m.boundary_h1;
    v.slit_length = m.slit_length;

    const double denom = std::pow(m.area, 2.0 * q + 0.5);
    const double tq = std::pow(T, q);
    v.F_q = m.perimeter * tq / denom;
    v.F_qk_lower = m.pk_lower * tq / denom;
    v.F_qk_upper = m.pk_upper * tq / denom;
    return v;
}

double universal_lower_bound(double q, int k) {
    if (!(q > 0.0 && q <= 0.5))
        throw std::invalid_argument("universal_lower_bound: need 0 < q <= 1/2");
    const double prefactor = std::pow(8.0 * kPi, 0.5 - q);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    if (k <= 1) return prefactor * inv_sqrt3;
    return prefactor * inv_sqrt3 / static_cast<double>(k);
}

InequalityReport isoperimetric(const MeasureReport& m, double tolerance) {
    return make_report("isoperimetric", 2.0 * std::sqrt(kPi),
                       m.perimeter / std::sqrt(m.area), tolerance);
}

InequalityReport saint_venant(const MeasureReport& m, double T, double tolerance) {
    return make_report("saint_venant", T / (m.area * m.area), 1.0 / (8.0 * kPi),
                       tolerance);
}

std::vector<InequalityReport> polya_reports(const MeasureReport& m, double T,
                                            double rho, int k, double tolerance) {
    const double a3 = m.area * m.area * m.area;
    const double width_term = 2.0 * kPi * std::max(k - 1, 0) * rho;
    std::vector<InequalityReport> out;
    const double d_width = m.pk_upper + width_term;
    out.push_back(
        make_report("polya_width", a3 / (3.0 * d_width * d_width), T, tolerance));
    const double d_boundary = 2.0 * m.boundary_h1 - m.perimeter + width_term;
    out.push_back(make_report("polya_boundary",
                              a3 / (3.0 * d_boundary * d_boundary), T, tolerance));
    return out;
}

InequalityReport f_half_report(const MeasureReport& m, double T, int k,
                               double tolerance) {
    const double f_half =
        m.perimeter * std::sqrt(T) / std::pow(m.area, 1.5);
    const double denom = k <= 1 ? 2.0 * m.boundary_h1 - m.perimeter
                                : 2.0 * m.boundary_h1 + (k - 2) * m.perimeter;
    const double bound = m.perimeter / (std::sqrt(3.0) * denom);
    return make_report("f_half_boundary_ratio", bound, f_half, tolerance);
}

std::optional<InequalityReport> universal_bound_report(
    const FunctionalValue& value, double tolerance) {
    if (value.slit_length > 0.0) return std::nullopt;
    if (value.q > 0.5) return std::nullopt;
    return make_report("f_q_universal", universal_lower_bound(value.q, value.k),
                       value.F_q, tolerance);
}

std::vector<InequalityReport> geometric_reports(const MeasureReport& m,
                                                double rho, int k,
                                                double tolerance) {
    std::vector<InequalityReport> out;
    const double rhs =
        (2.0 * m.boundary_h1 - m.perimeter + kPi * (k - 1) * rho) * rho;
    out.push_back(make_report("bonnesen_inradius", m.area, rhs, tolerance));
    out.push_back(make_report("inscribed_disc_perimeter", 2.0 * kPi * rho,
                              m.perimeter, tolerance));
    return out;
}

}  // namespace shapelab
