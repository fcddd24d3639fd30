#ifndef SHAPELAB_FAMILIES_HPP
#define SHAPELAB_FAMILIES_HPP

/// @file families.hpp
/// Parametric domain families used for calibration, trend studies and the
/// degeneration experiments: discs, annuli, rectangles, thin triangles,
/// radially slit discs, wavy discs, perforated discs and two squares joined
/// by a narrowing channel.
///
/// Each family declares its own default grid step, tied to the smallest
/// geometric feature it must resolve (slit spacing, channel width, hole
/// radius), and the number of bounded complement components it is built
/// with.  run_sequence walks a parameter ramp and tabulates measures,
/// torsion and the shape functional together with simple trend verdicts.

#include <optional>
#include <string>
#include <vector>

#include "shapelab/geometry.hpp"

namespace shapelab {

PlanarDomain make_disc(double radius = 1.0, int vertices = 256);
PlanarDomain make_annulus(double inner, double outer, int vertices = 256);
PlanarDomain make_rectangle(double a, double b = 1.0);
/// Right triangle with legs a (horizontal) and 1 (vertical).
PlanarDomain make_thin_triangle(double a);
/// Unit disc with n radial slits from radius 1/n to the rim, evenly spaced;
/// slit outer endpoints land exactly on rim polygon vertices.
PlanarDomain make_slit_disc(int n_slits, int rim_vertices = 256);
/// Unit disc with one radial slit of the given length ending on the rim.
PlanarDomain make_one_slit_disc(double slit_length = 0.9, int rim_vertices = 256);
/// Polar graph r(theta) = 1 + amplitude * cos(mode * theta).
PlanarDomain make_wiggly_disc(double amplitude, int mode = 8, int vertices = 512);
/// Unit disc with k round holes on a concentric ring.
PlanarDomain make_k_hole_disc(int k, double hole_radius = 0.08,
                              double ring_radius = 0.55, int rim_vertices = 256,
                              int hole_vertices = 64);
/// Two unit squares joined by a horizontal channel of width eps and length 1.
PlanarDomain make_channel_join(double eps);

enum class FamilyKind {
    disc,
    annulus,
    rectangle,
    thin_triangle,
    slit_disc,
    one_slit_disc,
    wiggly_disc,
    k_hole_disc,
    channel_join
};

/// One family member; `param` is the ramp variable (radius, aspect, slit
/// count, amplitude, hole count or channel width, by kind).
struct FamilySpec {
    FamilyKind kind = FamilyKind::disc;
    double param = 1.0;
};

PlanarDomain generate(const FamilySpec& spec);
/// Grid step resolving the family's smallest feature, as a unit fraction.
double default_resolution(const FamilySpec& spec);
/// Bounded complement components the member is built with.
int declared_bounded_complement(const FamilySpec& spec);
std::string family_name(FamilyKind kind);
FamilyKind parse_family(const std::string& name);
/// Fixed reference shape for the degeneration column of run_sequence: the
/// unit disc for the slit and wavy families, the first ramp member
/// otherwise (in which case nullopt is returned here).
std::optional<PlanarDomain> reference_limit(FamilyKind kind);

struct TrendRow {
    double param = 0.0;
    double h = 0.0;
    double area = 0.0;
    double perimeter = 0.0;
    double boundary_h1 = 0.0;
    double slit_length = 0.0;
    double rho = 0.0;
    double T = 0.0;  // Richardson-extrapolated
    double F_q = 0.0;
    double F_qk_lower = 0.0;
    double F_qk_upper = 0.0;
    double co_hausdorff_to_ref = 0.0;
};

struct TrendTable {
    FamilyKind kind = FamilyKind::disc;
    double q = 0.5;
    std::vector<TrendRow> rows;
    bool T_strictly_decreasing = false;
    bool F_strictly_decreasing = false;
    bool F_strictly_increasing = false;
    bool h1_strictly_increasing = false;
    double perimeter_rel_spread = 0.0;  // (max - min) / first
    double F_last_over_first = 0.0;
};

/// Walks the ramp at each member's default resolution; torsion values are
/// Richardson-extrapolated.  Throws on invalid ramp values.
TrendTable run_sequence(FamilyKind kind, const std::vector<double>& ramp,
                        double q);

}  // namespace shapelab

#endif
