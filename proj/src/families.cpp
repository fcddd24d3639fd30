#include "shapelab/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shapelab/distance_field.hpp"
#include "shapelab/functionals.hpp"
#include "shapelab/hausdorff.hpp"
#include "shapelab/torsion.hpp"

namespace shapelab {

namespace {

constexpr double kPi = std::numbers::pi;

Loop regular_polygon(double radius, int vertices, Point center = {0.0, 0.0}) {
    Loop loop;
    loop.reserve(vertices);
    for (int i = 0; i < vertices; ++i) {
        const double a = 2.0 * kPi * i / vertices;
        loop.push_back({center.x + radius * std::cos(a),
                        center.y + radius * std::sin(a)});
    }
    return loop;
}

Loop reversed(Loop loop) {
    std::reverse(loop.begin(), loop.end());
    return loop;
}

/// Rounds down to a unit fraction so grids stay reproducible across runs.
double nice_h(double h) {
    return 1.0 / std::ceil(1.0 / h);
}

}  // namespace

PlanarDomain make_disc(double radius, int vertices) {
    if (!(radius > 0.0) || vertices < 8)
        throw std::invalid_argument("make_disc: bad parameters");
    PlanarDomain d;
    d.outer_loops.push_back(regular_polygon(radius, vertices));
    return d;
}

PlanarDomain make_annulus(double inner, double outer, int vertices) {
    if (!(0.0 < inner && inner < outer))
        throw std::invalid_argument("make_annulus: need 0 < inner < outer");
    PlanarDomain d;
    d.outer_loops.push_back(regular_polygon(outer, vertices));
    d.hole_loops.push_back(reversed(regular_polygon(inner, vertices)));
    return d;
}

PlanarDomain make_rectangle(double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw std::invalid_argument("make_rectangle: bad sides");
    PlanarDomain d;
    d.outer_loops.push_back({{0.0, 0.0}, {a, 0.0}, {a, b}, {0.0, b}});
    return d;
}

PlanarDomain make_thin_triangle(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("make_thin_triangle: bad leg");
    PlanarDomain d;
    d.outer_loops.push_back({{0.0, 0.0}, {a, 0.0}, {0.0, 1.0}});
    return d;
}

PlanarDomain make_slit_disc(int n_slits, int rim_vertices) {
    if (n_slits < 1)
        throw std::invalid_argument("make_slit_disc: need at least one slit");
    if (rim_vertices % n_slits != 0)
        rim_vertices = n_slits * std::max(8, rim_vertices / n_slits);
    PlanarDomain d;
    d.outer_loops.push_back(regular_polygon(1.0, rim_vertices));
    const double r_in = 1.0 / n_slits;
    for (int s = 0; s < n_slits; ++s) {
        const double a = 2.0 * kPi * s / n_slits;
        // Outer endpoint is the rim vertex at the same angle, exactly.
        const Point rim = d.outer_loops[0][s * (rim_vertices / n_slits)];
        d.slits.push_back({{r_in * std::cos(a), r_in * std::sin(a)}, rim});
    }
    return d;
}

PlanarDomain make_one_slit_disc(double slit_length, int rim_vertices) {
    if (!(slit_length > 0.0 && slit_length < 1.0))
        throw std::invalid_argument("make_one_slit_disc: length must be in (0, 1)");
    PlanarDomain d;
    d.outer_loops.push_back(regular_polygon(1.0, rim_vertices));
    d.slits.push_back({{1.0 - slit_length, 0.0}, d.outer_loops[0][0]});
    return d;
}

PlanarDomain make_wiggly_disc(double amplitude, int mode, int vertices) {
    if (!(amplitude >= 0.0 && amplitude < 1.0) || mode < 1)
        throw std::invalid_argument("make_wiggly_disc: bad parameters");
    PlanarDomain d;
    Loop loop;
    loop.reserve(vertices);
    for (int i = 0; i < vertices; ++i) {
        const double a = 2.0 * kPi * i / vertices;
        const double r = 1.0 + amplitude * std::cos(mode * a);
        loop.push_back({r * std::cos(a), r * std::sin(a)});
    }
    d.outer_loops.push_back(std::move(loop));
    return d;
}

PlanarDomain make_k_hole_disc(int k, double hole_radius, double ring_radius,
                              int rim_vertices, int hole_vertices) {
    if (k < 0) throw std::invalid_argument("make_k_hole_disc: bad hole count");
    if (k > 0 && !(hole_radius > 0.0 && ring_radius + hole_radius < 1.0))
        throw std::invalid_argument("make_k_hole_disc: holes leave the disc");
    PlanarDomain d;
    d.outer_loops.push_back(regular_polygon(1.0, rim_vertices));
    for (int i = 0; i < k; ++i) {
        const double a = 2.0 * kPi * i / std::max(k, 1);
        const Point c{ring_radius * std::cos(a), ring_radius * std::sin(a)};
        d.hole_loops.push_back(reversed(regular_polygon(hole_radius, hole_vertices, c)));
    }
    return d;
}

PlanarDomain make_channel_join(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("make_channel_join: width must be in (0, 1)");
    const double lo = 0.5 - 0.5 * eps;
    const double hi = 0.5 + 0.5 * eps;
    PlanarDomain d;
    d.outer_loops.push_back({{0.0, 0.0},
                             {1.0, 0.0},
                             {1.0, lo},
                             {2.0, lo},
                             {2.0, 0.0},
                             {3.0, 0.0},
                             {3.0, 1.0},
                             {2.0, 1.0},
                             {2.0, hi},
                             {1.0, hi},
                             {1.0, 1.0},
                             {0.0, 1.0}});
    return d;
}

PlanarDomain generate(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::disc: return make_disc(spec.param);
        case FamilyKind::annulus: return make_annulus(spec.param, 1.0);
        case FamilyKind::rectangle: return make_rectangle(spec.param);
        case FamilyKind::thin_triangle: return make_thin_triangle(spec.param);
        case FamilyKind::slit_disc:
            return make_slit_disc(static_cast<int>(spec.param));
        case FamilyKind::one_slit_disc: return make_one_slit_disc(spec.param);
        case FamilyKind::wiggly_disc: return make_wiggly_disc(spec.param);
        case FamilyKind::k_hole_disc:
            return make_k_hole_disc(static_cast<int>(spec.param));
        case FamilyKind::channel_join: return make_channel_join(spec.param);
    }
    throw std::invalid_argument("generate: unknown family");
}

double default_resolution(const FamilySpec& spec) {
    double h = 1.0 / 48;
    switch (spec.kind) {
        case FamilyKind::disc:
            h = spec.param / 48.0;
            break;
        case FamilyKind::annulus:
            // Gap between the rings is the feature; the inradius is a
            // quarter of it, and the profile wants a few dozen grid steps
            // inside the inradius.
            h = (1.0 - spec.param) / 24.0;
            break;
        case FamilyKind::rectangle:
        case FamilyKind::thin_triangle:
            h = 1.0 / 16;  // unit thickness
            break;
        case FamilyKind::slit_disc:
            // Core radius 1/n is the smallest scale of the construction, but
            // the 256-gon rim already forces one edge length (~0.025)
            // between a slit and the rim edge next to its anchor vertex.
            h = 1.0 / (8.0 * std::max(6.0, spec.param));
            break;
        case FamilyKind::one_slit_disc:
            h = (1.0 - spec.param) / 8.0;
            break;
        case FamilyKind::wiggly_disc:
            h = 1.0 / 48;
            break;
        case FamilyKind::k_hole_disc:
            h = 0.08 / 6.0;  // hole radius over 6
            break;
        case FamilyKind::channel_join:
            h = spec.param / 8.0;
            break;
    }
    h = std::clamp(h, 1.0 / 512, 1.0 / 8);
    return nice_h(h);
}

int declared_bounded_complement(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::annulus: return 1;
        case FamilyKind::k_hole_disc: return static_cast<int>(spec.param);
        default: return 0;
    }
}

std::string family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::disc: return "disc";
        case FamilyKind::annulus: return "annulus";
        case FamilyKind::rectangle: return "rectangle";
        case FamilyKind::thin_triangle: return "thin_triangle";
        case FamilyKind::slit_disc: return "slit_disc";
        case FamilyKind::one_slit_disc: return "one_slit_disc";
        case FamilyKind::wiggly_disc: return "wiggly_disc";
        case FamilyKind::k_hole_disc: return "k_hole_disc";
        case FamilyKind::channel_join: return "channel_join";
    }
    return "unknown";
}

FamilyKind parse_family(const std::string& name) {
    for (FamilyKind kind :
         {FamilyKind::disc, FamilyKind::annulus, FamilyKind::rectangle,
          FamilyKind::thin_triangle, FamilyKind::slit_disc,
          FamilyKind::one_slit_disc, FamilyKind::wiggly_disc,
          FamilyKind::k_hole_disc, FamilyKind::channel_join}) {
        if (family_name(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown family: " + name);
}

std::optional<PlanarDomain> reference_limit(FamilyKind kind) {
    if (kind == FamilyKind::slit_disc || kind == FamilyKind::wiggly_disc ||
        kind == FamilyKind::one_slit_disc)
        return make_disc(1.0);
    return std::nullopt;
}

TrendTable run_sequence(FamilyKind kind, const std::vector<double>& ramp,
                        double q) {
    if (ramp.empty()) throw std::invalid_argument("run_sequence: empty ramp");
    TrendTable table;
    table.kind = kind;
    table.q = q;

    std::optional<PlanarDomain> reference = reference_limit(kind);
    double ref_diam = 0.0;
    if (!reference && ramp.size() > 1)
        reference = generate({kind, ramp.front()});
    if (reference) ref_diam = bounding_box(*reference).diameter();

    for (double param : ramp) {
        const FamilySpec spec{kind, param};
        const PlanarDomain domain = generate(spec);
        const double h = default_resolution(spec);
        const MeasureReport m = measure(domain);
        const int k = declared_bounded_complement(spec);

        const RichardsonTorsion rt = richardson_torsion(domain, h);
        // Inradius from the fine mask the torsion run already validated.
        const DistanceField field = distance_field(rasterize(domain, 0.5 * h));
        const FunctionalValue v = evaluate(m, rt.T_extrapolated, q, k);

        TrendRow row;
        row.param = param;
        row.h = h;
        row.area = m.area;
        row.perimeter = m.perimeter;
        row.boundary_h1 = m.boundary_h1;
        row.slit_length = m.slit_length;
        row.rho = field.max_distance;
        row.T = rt.T_extrapolated;
        row.F_q = v.F_q;
        row.F_qk_lower = v.F_qk_lower;
        row.F_qk_upper = v.F_qk_upper;
        if (reference) {
            const double diam =
                std::max(ref_diam, bounding_box(domain).diameter());
            row.co_hausdorff_to_ref =
                co_hausdorff(domain, *reference, nice_h(diam / 128.0));
        }
        table.rows.push_back(row);
    }

    const auto& rows = table.rows;
    auto strictly = [&rows](auto&& get, bool decreasing) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double a = get(rows[i - 1]);
            const double b = get(rows[i]);
            if (decreasing ? (b >= a) : (b <= a)) return false;
        }
        return rows.size() > 1;
    };
    table.T_strictly_decreasing =
        strictly([](const TrendRow& r) { return r.T; }, true);
    table.F_strictly_decreasing =
        strictly([](const TrendRow& r) { return r.F_q; }, true);
    table.F_strictly_increasing =
        strictly([](const TrendRow& r) { return r.F_q; }, false);
    table.h1_strictly_increasing =
        strictly([](const TrendRow& r) { return r.boundary_h1; }, false);
    double p_min = rows.front().perimeter;
    double p_max = p_min;
    for (const TrendRow& r : rows) {
        p_min = std::min(p_min, r.perimeter);
        p_max = std::max(p_max, r.perimeter);
    }
    table.perimeter_rel_spread = (p_max - p_min) / rows.front().perimeter;
    table.F_last_over_first = rows.back().F_q / rows.front().F_q;
    return table;
}

}  // namespace shapelab
