#include "shapelab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shapelab {

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p) { return std::hypot(p.x, p.y); }
double distance(Point a, Point b) { return norm(a - b); }

double BoundingBox::diameter() const {
    return std::hypot(width(), height());
}

void BoundingBox::include(Point p) {
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
}

void BoundingBox::include(const BoundingBox& other) {
    include(other.min);
    include(other.max);
}

double signed_area(const Loop& loop) {
    double twice = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = loop[i];
        const Point& q = loop[(i + 1) % n];
        twice += p.x * q.y - p.y * q.x;
    }
    return 0.5 * twice;
}

double loop_length(const Loop& loop) {
    double len = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i)
        len += distance(loop[i], loop[(i + 1) % n]);
    return len;
}

double polyline_length(const Polyline& line) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < line.size(); ++i)
        len += distance(line[i], line[i + 1]);
    return len;
}

bool point_on_segment(Point p, Point a, Point b, double eps) {
    const Point ab = b - a;
    const Point ap = p - a;
    const double len = norm(ab);
    if (len == 0.0) return distance(p, a) <= eps;
    if (std::abs(cross(ab, ap)) > eps * len) return false;
    const double t = dot(ap, ab) / (len * len);
    return t >= -eps / len && t <= 1.0 + eps / len;
}

double dist_point_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

double dist_segment_segment(Point a0, Point a1, Point b0, Point b1) {
    if (segments_intersect(a0, a1, b0, b1)) return 0.0;
    double d = dist_point_segment(a0, b0, b1);
    d = std::min(d, dist_point_segment(a1, b0, b1));
    d = std::min(d, dist_point_segment(b0, a0, a1));
    d = std::min(d, dist_point_segment(b1, a0, a1));
    return d;
}

namespace {

int orientation_sign(Point a, Point b, Point c, double eps) {
    const double v = cross(b - a, c - a);
    if (v > eps) return 1;
    if (v < -eps) return -1;
    return 0;
}

}  // namespace

bool segments_intersect(Point a0, Point a1, Point b0, Point b1) {
    // Classification scale: orientation epsilon proportional to the local
    // coordinate magnitude keeps the predicate usable at any domain size.
    double scale = 0.0;
    for (Point p : {a0, a1, b0, b1})
        scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double eps = 1e-14 * std::max(1.0, scale * scale);

    const int o1 = orientation_sign(a0, a1, b0, eps);
    const int o2 = orientation_sign(a0, a1, b1, eps);
    const int o3 = orientation_sign(b0, b1, a0, eps);
    const int o4 = orientation_sign(b0, b1, a1, eps);

    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
        return true;

    const double peps = 1e-12 * std::max(1.0, scale);
    if (o1 == 0 && point_on_segment(b0, a0, a1, peps)) return true;
    if (o2 == 0 && point_on_segment(b1, a0, a1, peps)) return true;
    if (o3 == 0 && point_on_segment(a0, b0, b1, peps)) return true;
    if (o4 == 0 && point_on_segment(a1, b0, b1, peps)) return true;
    return false;
}

bool point_in_loop(Point p, const Loop& loop) {
    // Ray cast toward +x, half-open in y so vertices are counted once.
    bool inside = false;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = loop[i];
        const Point& b = loop[(i + 1) % n];
        if ((a.y <= p.y) == (b.y <= p.y)) continue;
        const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        if (x_cross > p.x) inside = !inside;
    }
    return inside;
}

namespace {

double domain_scale(const PlanarDomain& domain) {
    double s = 0.0;
    auto scan = [&s](const std::vector<Point>& pts) {
        for (Point p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
    };
    for (const Loop& l : domain.outer_loops) scan(l);
    for (const Loop& l : domain.hole_loops) scan(l);
    for (const Polyline& l : domain.slits) scan(l);
    return std::max(1.0, s);
}

bool point_on_loop(Point p, const Loop& loop, double eps) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i)
        if (point_on_segment(p, loop[i], loop[(i + 1) % n], eps)) return true;
    return false;
}

[[noreturn]] void reject(const std::string& what) {
    throw std::invalid_argument("invalid domain: " + what);
}

std::string tag(const char* kind, std::size_t index) {
    return std::string(kind) + " " + std::to_string(index);
}

void check_loop_simple(const Loop& loop, const std::string& name, double eps) {
    const std::size_t n = loop.size();
    if (n < 3) reject(name + " has fewer than 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        if (distance(loop[i], loop[(i + 1) % n]) <= eps)
            reject(name + " has a zero-length edge at vertex " + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Adjacent edges share exactly one endpoint; skip those pairs.
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(loop[i], loop[(i + 1) % n], loop[j],
                                   loop[(j + 1) % n]))
                reject(name + " self-intersects between edges " +
                       std::to_string(i) + " and " + std::to_string(j));
        }
    }
}

bool loops_touch(const Loop& a, const Loop& b) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (segments_intersect(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb]))
                return true;
    return false;
}

}  // namespace

bool point_inside(const PlanarDomain& domain, Point p) {
    const double eps = 1e-12 * domain_scale(domain);
    bool inside = false;
    for (const Loop& loop : domain.outer_loops) {
        if (point_on_loop(p, loop, eps)) return false;
        if (point_in_loop(p, loop)) inside = !inside;
    }
    if (!inside) return false;
    for (const Loop& loop : domain.hole_loops) {
        if (point_on_loop(p, loop, eps)) return false;
        if (point_in_loop(p, loop)) return false;
    }
    return true;
}

void validate(const PlanarDomain& domain) {
    if (domain.outer_loops.empty()) reject("no outer loop");
    const double scale = domain_scale(domain);
    const double eps = 1e-12 * scale;

    for (std::size_t i = 0; i < domain.outer_loops.size(); ++i)
        check_loop_simple(domain.outer_loops[i], tag("outer loop", i), eps);
    for (std::size_t i = 0; i < domain.hole_loops.size(); ++i)
        check_loop_simple(domain.hole_loops[i], tag("hole loop", i), eps);

    // Outer loops: pairwise disjoint, not nested.
    for (std::size_t i = 0; i < domain.outer_loops.size(); ++i) {
        for (std::size_t j = i + 1; j < domain.outer_loops.size(); ++j) {
            if (loops_touch(domain.outer_loops[i], domain.outer_loops[j]))
                reject(tag("outer loop", j) + " touches " + tag("outer loop", i));
            if (point_in_loop(domain.outer_loops[j][0], domain.outer_loops[i]) ||
                point_in_loop(domain.outer_loops[i][0], domain.outer_loops[j]))
                reject(tag("outer loop", j) + " nested with " + tag("outer loop", i));
        }
    }

    // Holes: strictly inside exactly one outer loop, pairwise disjoint,
    // never nested inside one another.
    for (std::size_t i = 0; i < domain.hole_loops.size(); ++i) {
        const Loop& hole = domain.hole_loops[i];
        std::size_t containers = 0;
        for (std::size_t o = 0; o < domain.outer_loops.size(); ++o) {
            const Loop& outer = domain.outer_loops[o];
            if (loops_touch(hole, outer))
                reject(tag("hole loop", i) + " touches " + tag("outer loop", o));
            if (point_in_loop(hole[0], outer)) ++containers;
        }
        if (containers != 1)
            reject(tag("hole loop", i) + " is not strictly inside exactly one outer loop");
        for (std::size_t j = i + 1; j < domain.hole_loops.size(); ++j) {
            const Loop& other = domain.hole_loops[j];
            if (loops_touch(hole, other))
                reject(tag("hole loop", j) + " touches " + tag("hole loop", i));
            if (point_in_loop(other[0], hole) || point_in_loop(hole[0], other))
                reject(tag("hole loop", j) + " nested with " + tag("hole loop", i));
        }
    }

    // Slits: positive length, inside the closure, touching loops only at
    // slit endpoints.  Interior slit vertices must be strictly inside.
    for (std::size_t s = 0; s < domain.slits.size(); ++s) {
        const Polyline& slit = domain.slits[s];
        const std::string name = tag("slit", s);
        if (slit.size() < 2) reject(name + " has fewer than 2 vertices");
        if (polyline_length(slit) <= eps) reject(name + " has zero length");
        for (std::size_t i = 0; i + 1 < slit.size(); ++i)
            if (distance(slit[i], slit[i + 1]) <= eps)
                reject(name + " has a zero-length edge at vertex " + std::to_string(i));

        auto on_any_loop = [&](Point p) {
            for (const Loop& l : domain.outer_loops)
                if (point_on_loop(p, l, eps)) return true;
            for (const Loop& l : domain.hole_loops)
                if (point_on_loop(p, l, eps)) return true;
            return false;
        };

        for (std::size_t i = 0; i < slit.size(); ++i) {
            const bool endpoint = (i == 0 || i + 1 == slit.size());
            const bool strict_inside = point_inside(domain, slit[i]);
            if (endpoint) {
                if (!strict_inside && !on_any_loop(slit[i]))
                    reject(name + " endpoint " + std::to_string(i) +
                           " lies outside the closure");
            } else if (!strict_inside) {
                reject(name + " interior vertex " + std::to_string(i) +
                       " is not strictly inside");
            }
        }

        // Slit edges may meet a loop only where a slit endpoint sits on it.
        for (std::size_t i = 0; i + 1 < slit.size(); ++i) {
            const Point a = slit[i];
            const Point b = slit[i + 1];
            const bool a_is_endpoint = (i == 0);
            const bool b_is_endpoint = (i + 2 == slit.size());
            auto check_against = [&](const Loop& loop, const std::string& lname) {
                const std::size_t n = loop.size();
                for (std::size_t j = 0; j < n; ++j) {
                    const Point la = loop[j];
                    const Point lb = loop[(j + 1) % n];
                    if (!segments_intersect(a, b, la, lb)) continue;
                    const bool ok =
                        (a_is_endpoint && point_on_segment(a, la, lb, eps)) ||
                        (b_is_endpoint && point_on_segment(b, la, lb, eps));
                    if (!ok)
                        reject(name + " crosses " + lname + " away from its endpoints");
                }
            };
            for (std::size_t o = 0; o < domain.outer_loops.size(); ++o)
                check_against(domain.outer_loops[o], tag("outer loop", o));
            for (std::size_t hIdx = 0; hIdx < domain.hole_loops.size(); ++hIdx)
                check_against(domain.hole_loops[hIdx], tag("hole loop", hIdx));
        }
    }
}

MeasureReport measure(const PlanarDomain& domain) {
    validate(domain);
    MeasureReport r;
    for (const Loop& loop : domain.outer_loops) {
        r.area += std::abs(signed_area(loop));
        r.perimeter += loop_length(loop);
    }
    for (const Loop& loop : domain.hole_loops) {
        r.area -= std::abs(signed_area(loop));
        r.perimeter += loop_length(loop);
    }
    for (const Polyline& slit : domain.slits) r.slit_length += polyline_length(slit);
    r.boundary_h1 = r.perimeter + r.slit_length;
    r.pk_lower = r.boundary_h1;
    r.pk_upper = r.perimeter + 2.0 * r.slit_length;
    return r;
}

namespace {

PlanarDomain transformed(const PlanarDomain& domain, auto&& f) {
    PlanarDomain out = domain;
    for (Loop& l : out.outer_loops)
        for (Point& p : l) p = f(p);
    for (Loop& l : out.hole_loops)
        for (Point& p : l) p = f(p);
    for (Polyline& l : out.slits)
        for (Point& p : l) p = f(p);
    return out;
}

}  // namespace

PlanarDomain scaled(const PlanarDomain& domain, double factor) {
    if (!(factor > 0.0))
        throw std::invalid_argument("scaled: factor must be positive");
    return transformed(domain, [factor](Point p) { return factor * p; });
}

PlanarDomain translated(const PlanarDomain& domain, Point offset) {
    return transformed(domain, [offset](Point p) { return p + offset; });
}

BoundingBox bounding_box(const PlanarDomain& domain) {
    BoundingBox box;
    for (const Loop& l : domain.outer_loops)
        for (Point p : l) box.include(p);
    for (const Loop& l : domain.hole_loops)
        for (Point p : l) box.include(p);
    for (const Polyline& l : domain.slits)
        for (Point p : l) box.include(p);
    return box;
}

std::vector<BoundarySegment> boundary_segments(const PlanarDomain& domain) {
    std::vector<BoundarySegment> segs;
    auto add_loop = [&segs](const Loop& loop) {
        const std::size_t n = loop.size();
        for (std::size_t i = 0; i < n; ++i)
            segs.push_back({loop[i], loop[(i + 1) % n], false});
    };
    for (const Loop& l : domain.outer_loops) add_loop(l);
    for (const Loop& l : domain.hole_loops) add_loop(l);
    for (const Polyline& slit : domain.slits)
        for (std::size_t i = 0; i + 1 < slit.size(); ++i)
            segs.push_back({slit[i], slit[i + 1], true});
    return segs;
}

double min_feature_clearance(const PlanarDomain& domain) {
    // Element list: each loop and each slit is one element.  The clearance
    // between a slit and the loop it legally touches ignores segment pairs
    // meeting at that contact (their distance is zero by construction).
    const double eps = 1e-9 * domain_scale(domain);
    struct Element {
        std::vector<BoundarySegment> segs;
        std::vector<Point> endpoints;  // slit endpoints allowed to touch loops
    };
    std::vector<Element> loops_el;
    std::vector<Element> slits_el;
    auto loop_element = [](const Loop& loop) {
        Element e;
        const std::size_t n = loop.size();
        for (std::size_t i = 0; i < n; ++i)
            e.segs.push_back({loop[i], loop[(i + 1) % n], false});
        return e;
    };
    for (const Loop& l : domain.outer_loops) loops_el.push_back(loop_element(l));
    for (const Loop& l : domain.hole_loops) loops_el.push_back(loop_element(l));
    for (const Polyline& s : domain.slits) {
        Element e;
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            e.segs.push_back({s[i], s[i + 1], true});
        e.endpoints = {s.front(), s.back()};
        slits_el.push_back(e);
    }

    double best = std::numeric_limits<double>::infinity();
    auto pair_distance = [&](const Element& A, const Element& B,
                             const std::vector<Point>& contacts) {
        for (const BoundarySegment& sa : A.segs) {
            for (const BoundarySegment& sb : B.segs) {
                bool skip = false;
                for (Point c : contacts) {
                    const bool touches_a = point_on_segment(c, sa.a, sa.b, eps);
                    const bool touches_b = point_on_segment(c, sb.a, sb.b, eps);
                    if (touches_a && touches_b) { skip = true; break; }
                }
                if (skip) continue;
                best = std::min(best, dist_segment_segment(sa.a, sa.b, sb.a, sb.b));
            }
        }
    };

    for (std::size_t i = 0; i < loops_el.size(); ++i)
        for (std::size_t j = i + 1; j < loops_el.size(); ++j)
            pair_distance(loops_el[i], loops_el[j], {});
    for (std::size_t i = 0; i < slits_el.size(); ++i) {
        for (std::size_t j = 0; j < loops_el.size(); ++j)
            pair_distance(slits_el[i], loops_el[j], slits_el[i].endpoints);
        for (std::size_t j = i + 1; j < slits_el.size(); ++j) {
            std::vector<Point> contacts = slits_el[i].endpoints;
            contacts.insert(contacts.end(), slits_el[j].endpoints.begin(),
                            slits_el[j].endpoints.end());
            pair_distance(slits_el[i], slits_el[j], contacts);
        }
    }
    return best;
}

}  // namespace shapelab
