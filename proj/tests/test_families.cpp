#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shapelab/families.hpp"
#include "shapelab/geometry.hpp"
#include "shapelab/torsion.hpp"

using namespace shapelab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("family measures carry exact construction arithmetic") {
    SUBCASE("slit disc: slit length is budgeted exactly") {
        const MeasureReport m = measure(make_slit_disc(8));
        const double rim = 512.0 * std::sin(kPi / 256);
        CHECK(m.perimeter == doctest::Approx(rim).epsilon(1e-12));
        // Eight radial slits from radius 1/8 to rim vertices at radius 1.
        CHECK(m.slit_length == doctest::Approx(7.0).epsilon(1e-12));
        CHECK(m.boundary_h1 == doctest::Approx(rim + 7.0).epsilon(1e-12));
        CHECK(m.pk_upper == doctest::Approx(rim + 14.0).epsilon(1e-12));
    }
    SUBCASE("channel join: two unit squares plus the channel") {
        const MeasureReport m = measure(make_channel_join(0.1));
        CHECK(m.area == doctest::Approx(2.1).epsilon(1e-12));
        CHECK(m.perimeter == doctest::Approx(9.8).epsilon(1e-12));
    }
    SUBCASE("perforated disc: rim minus two round holes") {
        const MeasureReport m = measure(make_k_hole_disc(2));
        const double rim_area = 128.0 * std::sin(kPi / 128);
        const double hole_area = 32.0 * std::sin(kPi / 32) * 0.08 * 0.08;
        const double hole_perim = 128.0 * std::sin(kPi / 64) * 0.08;
        CHECK(m.area == doctest::Approx(rim_area - 2 * hole_area).epsilon(1e-12));
        CHECK(m.perimeter ==
              doctest::Approx(512.0 * std::sin(kPi / 256) + 2 * hole_perim)
                  .epsilon(1e-12));
    }
    SUBCASE("thin triangle") {
        const MeasureReport m = measure(make_thin_triangle(4.0));
        CHECK(m.area == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(m.perimeter ==
              doctest::Approx(5.0 + std::sqrt(17.0)).epsilon(1e-12));
    }
    SUBCASE("wiggly disc: polar graph area") {
        const MeasureReport m = measure(make_wiggly_disc(0.1));
        // Smooth value pi (1 + amplitude^2 / 2), polygonized at 512 vertices.
        CHECK(m.area == doctest::Approx(kPi * 1.005).epsilon(1e-4));
        CHECK(m.perimeter > 2 * kPi);
    }
}

TEST_CASE("makers validate their parameters") {
    CHECK_THROWS_AS(make_annulus(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_annulus(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_slit_disc(0), std::invalid_argument);
    CHECK_THROWS_AS(make_one_slit_disc(1.5), std::invalid_argument);
    CHECK_THROWS_AS(make_wiggly_disc(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_k_hole_disc(2, 0.5, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(make_channel_join(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_rectangle(-1.0), std::invalid_argument);
}

TEST_CASE("slit endpoints anchor on rim vertices") {
    const PlanarDomain d = make_slit_disc(4);
    REQUIRE(d.slits.size() == 4);
    for (int s = 0; s < 4; ++s) {
        const Point tip = d.slits[s].back();
        const Point vertex = d.outer_loops[0][s * 64];
        CHECK(tip.x == vertex.x);
        CHECK(tip.y == vertex.y);
    }
}

TEST_CASE("default resolutions are unit fractions tied to features") {
    for (const FamilySpec spec :
         {FamilySpec{FamilyKind::disc, 1.0}, FamilySpec{FamilyKind::annulus, 0.5},
          FamilySpec{FamilyKind::rectangle, 4.0},
          FamilySpec{FamilyKind::slit_disc, 8.0},
          FamilySpec{FamilyKind::one_slit_disc, 0.9},
          FamilySpec{FamilyKind::k_hole_disc, 3.0},
          FamilySpec{FamilyKind::channel_join, 0.1}}) {
        CAPTURE(family_name(spec.kind));
        const double h = default_resolution(spec);
        const double inv = 1.0 / h;
        CHECK(inv == doctest::Approx(std::round(inv)).epsilon(1e-12));
        CHECK(h <= 1.0 / 8);
        CHECK(h >= 1.0 / 512);
        // The default must actually rasterize.
        CHECK_NOTHROW(rasterize(generate(spec), h));
    }
    // Finer features pull the default down.
    CHECK(default_resolution({FamilyKind::channel_join, 0.05}) <
          default_resolution({FamilyKind::channel_join, 0.2}));
    CHECK(default_resolution({FamilyKind::slit_disc, 16.0}) <
          default_resolution({FamilyKind::slit_disc, 8.0}));
}

TEST_CASE("declared complement components") {
    CHECK(declared_bounded_complement({FamilyKind::disc, 1.0}) == 0);
    CHECK(declared_bounded_complement({FamilyKind::annulus, 0.5}) == 1);
    CHECK(declared_bounded_complement({FamilyKind::k_hole_disc, 3.0}) == 3);
    CHECK(declared_bounded_complement({FamilyKind::slit_disc, 8.0}) == 0);
    CHECK(declared_bounded_complement({FamilyKind::channel_join, 0.1}) == 0);
}

TEST_CASE("family names round-trip") {
    for (FamilyKind kind :
         {FamilyKind::disc, FamilyKind::annulus, FamilyKind::rectangle,
          FamilyKind::thin_triangle, FamilyKind::slit_disc,
          FamilyKind::one_slit_disc, FamilyKind::wiggly_disc,
          FamilyKind::k_hole_disc, FamilyKind::channel_join}) {
        CHECK(parse_family(family_name(kind)) == kind);
    }
    CHECK_THROWS_AS(parse_family("moebius"), std::invalid_argument);
}

TEST_CASE("degeneration references") {
    CHECK(reference_limit(FamilyKind::slit_disc).has_value());
    CHECK(reference_limit(FamilyKind::one_slit_disc).has_value());
    CHECK(reference_limit(FamilyKind::wiggly_disc).has_value());
    CHECK_FALSE(reference_limit(FamilyKind::disc).has_value());
    CHECK_FALSE(reference_limit(FamilyKind::rectangle).has_value());
}

TEST_CASE("rectangle ramp: trends and solver-versus-series validation") {
    const TrendTable t = run_sequence(FamilyKind::rectangle, {2, 3, 4, 5}, 0.5);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.F_strictly_decreasing);
    CHECK_FALSE(t.T_strictly_decreasing);
    CHECK(t.h1_strictly_increasing);
    CHECK(t.perimeter_rel_spread == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.F_last_over_first < 0.95);
    for (const TrendRow& row : t.rows) {
        CHECK(row.T ==
              doctest::Approx(rectangle_torsion(row.param, 1.0)).epsilon(0.01));
        CHECK(row.area == doctest::Approx(row.param).epsilon(1e-12));
    }
    // Reference for a ramp without a fixed limit is its first member, so
    // the first row sits at distance zero and the widened ones at the
    // half-thickness of the added strip.
    CHECK(t.rows[0].co_hausdorff_to_ref <= 2.0 * t.rows[0].h);
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        CHECK(t.rows[i].co_hausdorff_to_ref == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("wiggly ramp flattens toward the disc") {
    const TrendTable t =
        run_sequence(FamilyKind::wiggly_disc, {0.15, 0.1, 0.05}, 0.5);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.F_strictly_decreasing);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        // Complement distance to the unit disc tracks the amplitude.
        CHECK(t.rows[i].co_hausdorff_to_ref ==
              doctest::Approx(t.rows[i].param).epsilon(0.12));
        if (i > 0)
            CHECK(t.rows[i].co_hausdorff_to_ref <
                  t.rows[i - 1].co_hausdorff_to_ref);
    }
    // The disc value sqrt(2)/2 is the floor of this family.
    CHECK(t.rows.back().F_q > std::sqrt(0.5));
    CHECK(t.rows.back().F_q < std::sqrt(0.5) * 1.05);
}

TEST_CASE("thin triangle approaches the taper limit") {
    FamilySpec spec{FamilyKind::thin_triangle, 100.0};
    const PlanarDomain d = generate(spec);
    const MeasureReport m = measure(d);
    const RichardsonTorsion rt = richardson_torsion(d, default_resolution(spec));
    const double F =
        m.perimeter * std::sqrt(rt.T_extrapolated) / std::pow(m.area, 1.5);
    CHECK(F == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(0.02));
}

TEST_CASE("run_sequence rejects an empty ramp") {
    CHECK_THROWS_AS(run_sequence(FamilyKind::disc, {}, 0.5),
                    std::invalid_argument);
}
