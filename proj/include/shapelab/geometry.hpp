#ifndef SHAPELAB_GEOMETRY_HPP
#define SHAPELAB_GEOMETRY_HPP

/// @file geometry.hpp
/// Exact polygonal planar domains with holes and zero-width slits.
///
/// A domain is described by outer loops (counterclockwise simple closed
/// polylines), hole loops (clockwise, each strictly inside one outer loop)
/// and open polyline slits lying inside the closure of the set.  Slits have
/// zero Lebesgue measure: they carry boundary length (and remove capacity
/// downstream) but no area and no distributional perimeter.
///
/// All quantities are in abstract length units.  Inputs are validated once;
/// every type in this header is immutable after construction, so concurrent
/// reads are safe.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace shapelab {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point p);
double distance(Point a, Point b);

/// Closed loop: consecutive vertices joined by edges, last joins back to first.
using Loop = std::vector<Point>;
/// Open polyline: edges between consecutive vertices only.
using Polyline = std::vector<Point>;

struct BoundingBox {
    Point min{std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
    Point max{-std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity()};

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double diameter() const;
    void include(Point p);
    void include(const BoundingBox& other);
};

struct PlanarDomain {
    std::vector<Loop> outer_loops;     // counterclockwise
    std::vector<Loop> hole_loops;      // clockwise, strictly inside an outer loop
    std::vector<Polyline> slits;       // open, zero width, inside the closure

    bool has_slits() const { return !slits.empty(); }
    std::size_t hole_count() const { return hole_loops.size(); }
};

/// Area, perimeter and boundary-length bookkeeping of one domain.
///
/// `perimeter` is the distributional perimeter (loops only; slits are
/// invisible to it).  `boundary_h1` is the 1-dimensional Hausdorff measure
/// of the topological boundary: loops plus slit length counted once.
/// `pk_lower`/`pk_upper` bracket the relaxed perimeter, which for this
/// domain class is pinned only to the interval
/// [H1(boundary), perimeter + 2 * slit_length].
struct MeasureReport {
    double area = 0.0;
    double perimeter = 0.0;
    double boundary_h1 = 0.0;
    double slit_length = 0.0;
    double pk_lower = 0.0;
    double pk_upper = 0.0;
};

/// Validates all structural invariants (simple loops, pairwise disjoint,
/// holes strictly inside exactly one outer loop, slits inside the closure
/// touching loops only at endpoints).  Throws std::invalid_argument naming
/// the offending loop or slit index.
void validate(const PlanarDomain& domain);

/// Measures a validated domain.  Area by signed shoelace sums (outer minus
/// holes; slits contribute nothing), perimeter as total loop edge length.
MeasureReport measure(const PlanarDomain& domain);

/// Uniform scaling about the origin.
PlanarDomain scaled(const PlanarDomain& domain, double factor);
PlanarDomain translated(const PlanarDomain& domain, Point offset);

BoundingBox bounding_box(const PlanarDomain& domain);

/// Smallest clearance between distinct boundary elements (loop/loop,
/// slit/loop, slit/slit), ignoring legal slit-endpoint contacts.
/// Returns +inf when the domain has a single loop and no slits.
double min_feature_clearance(const PlanarDomain& domain);

/// Even-odd parity test over all loops; points on any edge classify outside.
bool point_inside(const PlanarDomain& domain, Point p);

// Low-level predicates shared by the rasterizer and validators.
double signed_area(const Loop& loop);
double loop_length(const Loop& loop);
double polyline_length(const Polyline& line);
bool point_on_segment(Point p, Point a, Point b, double eps);
double dist_point_segment(Point p, Point a, Point b);
double dist_segment_segment(Point a0, Point a1, Point b0, Point b1);
bool segments_intersect(Point a0, Point a1, Point b0, Point b1);
bool point_in_loop(Point p, const Loop& loop);

/// One boundary edge, used by distance queries; `slit` marks slit edges.
struct BoundarySegment {
    Point a;
    Point b;
    bool slit = false;
};

/// Flattened boundary of a domain: every loop edge plus every slit edge.
std::vector<BoundarySegment> boundary_segments(const PlanarDomain& domain);

}  // namespace shapelab

#endif
