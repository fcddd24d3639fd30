#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shapelab/families.hpp"
#include "shapelab/geometry.hpp"

using namespace shapelab;

namespace {
constexpr double kPi = std::numbers::pi;

PlanarDomain unit_square() {
    PlanarDomain d;
    d.outer_loops.push_back({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    return d;
}
}  // namespace

TEST_CASE("unit square measures exactly") {
    const MeasureReport m = measure(unit_square());
    CHECK(m.area == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.perimeter == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(m.boundary_h1 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(m.slit_length == 0.0);
    CHECK(m.pk_lower == doctest::Approx(4.0));
    CHECK(m.pk_upper == doctest::Approx(4.0));
}

TEST_CASE("256-gon disc carries the known polygonization defect") {
    const MeasureReport m = measure(make_disc());
    // Area of the inscribed n-gon: (n/2) sin(2 pi / n).
    CHECK(m.area == doctest::Approx(128.0 * std::sin(kPi / 128)).epsilon(1e-14));
    CHECK(m.area == doctest::Approx(kPi).epsilon(2e-4));
    CHECK(m.perimeter == doctest::Approx(2 * kPi).epsilon(5e-5));
}

TEST_CASE("slits add Hausdorff length but no perimeter or area") {
    PlanarDomain d = unit_square();
    d.slits.push_back({{0.2, 0.5}, {0.8, 0.5}});
    validate(d);
    const MeasureReport m = measure(d);
    CHECK(m.area == doctest::Approx(1.0));
    CHECK(m.perimeter == doctest::Approx(4.0));
    CHECK(m.slit_length == doctest::Approx(0.6));
    CHECK(m.boundary_h1 == doctest::Approx(4.6));
    // Relaxed perimeter bracket: [H1, P + 2 * slit].
    CHECK(m.pk_lower == doctest::Approx(4.6));
    CHECK(m.pk_upper == doctest::Approx(5.2));
}

TEST_CASE("scaling acts quadratically on area, linearly on lengths") {
    PlanarDomain d = make_annulus(0.5, 1.0);
    d.slits.push_back({{0.6, 0.0}, {0.95, 0.0}});
    validate(d);
    const MeasureReport m1 = measure(d);
    const MeasureReport m3 = measure(scaled(d, 3.0));
    CHECK(m3.area == doctest::Approx(9.0 * m1.area).epsilon(1e-13));
    CHECK(m3.perimeter == doctest::Approx(3.0 * m1.perimeter).epsilon(1e-13));
    CHECK(m3.boundary_h1 == doctest::Approx(3.0 * m1.boundary_h1).epsilon(1e-13));

    const MeasureReport mt = measure(translated(d, {5.0, -2.0}));
    CHECK(mt.area == doctest::Approx(m1.area).epsilon(1e-12));
    CHECK(mt.perimeter == doctest::Approx(m1.perimeter).epsilon(1e-12));
}

TEST_CASE("validate rejects structural violations") {
    SUBCASE("self-intersecting loop") {
        PlanarDomain d;
        d.outer_loops.push_back({{0, 0}, {1, 1}, {1, 0}, {0, 1}});  // bowtie
        CHECK_THROWS_AS(validate(d), std::invalid_argument);
    }
    SUBCASE("hole outside its outer loop") {
        PlanarDomain d = unit_square();
        d.hole_loops.push_back({{2, 0}, {2, 0.5}, {2.5, 0.5}, {2.5, 0}});
        CHECK_THROWS_AS(validate(d), std::invalid_argument);
    }
    SUBCASE("hole touching the outer loop") {
        PlanarDomain d = unit_square();
        d.hole_loops.push_back({{0.0, 0.4}, {0.0, 0.6}, {0.3, 0.6}, {0.3, 0.4}});
        CHECK_THROWS_AS(validate(d), std::invalid_argument);
    }
    SUBCASE("nested holes") {
        PlanarDomain d = unit_square();
        d.hole_loops.push_back({{0.2, 0.2}, {0.2, 0.8}, {0.8, 0.8}, {0.8, 0.2}});
        d.hole_loops.push_back({{0.4, 0.4}, {0.4, 0.6}, {0.6, 0.6}, {0.6, 0.4}});
        CHECK_THROWS_AS(validate(d), std::invalid_argument);
    }
    SUBCASE("slit crossing the boundary") {
        PlanarDomain d = unit_square();
        d.slits.push_back({{0.5, 0.5}, {1.5, 0.5}});
        CHECK_THROWS_AS(validate(d), std::invalid_argument);
    }
    SUBCASE("slit endpoint contact with the rim is legal") {
        PlanarDomain d = unit_square();
        d.slits.push_back({{0.5, 0.5}, {1.0, 0.5}});
        CHECK_NOTHROW(validate(d));
    }
}

TEST_CASE("point classification is even-odd with boundary outside") {
    const PlanarDomain d = make_annulus(0.5, 1.0);
    CHECK(point_inside(d, {0.75, 0.0}));
    CHECK_FALSE(point_inside(d, {0.0, 0.0}));   // inside the hole
    CHECK_FALSE(point_inside(d, {1.5, 0.0}));   // outside
    const PlanarDomain sq = unit_square();
    CHECK(point_inside(sq, {0.5, 0.5}));
    CHECK_FALSE(point_inside(sq, {0.0, 0.5}));  // on an edge
    CHECK_FALSE(point_inside(sq, {0.0, 0.0}));  // on a vertex
}

TEST_CASE("feature clearance sees the ring gap") {
    const double c = min_feature_clearance(make_annulus(0.5, 1.0));
    // Phase-aligned 256-gons: the gap is between parallel edges, both
    // shrunk radially by cos(pi/256) relative to their circumradii.
    CHECK(c == doctest::Approx(0.5 * std::cos(kPi / 256)).epsilon(1e-12));
    CHECK(min_feature_clearance(make_disc()) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("segment predicates") {
    CHECK(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
    CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
    CHECK(dist_point_segment({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(dist_point_segment({2, 0}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(dist_segment_segment({0, 0}, {1, 0}, {0, 2}, {1, 2}) ==
          doctest::Approx(2.0));
    CHECK(point_on_segment({0.5, 0.0}, {0, 0}, {1, 0}, 1e-12));
    CHECK_FALSE(point_on_segment({0.5, 0.1}, {0, 0}, {1, 0}, 1e-12));
}

TEST_CASE("boundary_segments flattens loops and slits") {
    PlanarDomain d = unit_square();
    d.slits.push_back({{0.2, 0.5}, {0.5, 0.5}, {0.8, 0.5}});
    const auto segs = boundary_segments(d);
    CHECK(segs.size() == 6);  // 4 square edges + 2 slit edges
    int slit_edges = 0;
    for (const auto& s : segs) slit_edges += s.slit ? 1 : 0;
    CHECK(slit_edges == 2);
}

TEST_CASE("bounding box and diameter") {
    const BoundingBox bb = bounding_box(make_rectangle(3.0, 1.0));
    CHECK(bb.width() == doctest::Approx(3.0));
    CHECK(bb.height() == doctest::Approx(1.0));
    CHECK(bb.diameter() == doctest::Approx(std::sqrt(10.0)));
}
