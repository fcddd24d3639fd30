#include "shapelab/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace shapelab {

std::size_t RasterMask::interior_count() const {
    return static_cast<std::size_t>(
        std::count(inside.begin(), inside.end(), std::uint8_t{1}));
}

namespace detail {

void scanline_row(const PlanarDomain& domain, const RasterMask& frame, int j,
                  std::vector<std::uint8_t>& row) {
    row.assign(frame.nx, 0);
    const double y = (frame.iy0 + j) * frame.h;
    // Crossings of the horizontal line at height y with all loop edges,
    // half-open in y so shared vertices count once.
    std::vector<double> xs;
    auto collect = [&](const Loop& loop) {
        const std::size_t n = loop.size();
        for (std::size_t e = 0; e < n; ++e) {
            const Point& a = loop[e];
            const Point& b = loop[(e + 1) % n];
            if ((a.y <= y) == (b.y <= y)) continue;
            xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
        }
    };
    for (const Loop& l : domain.outer_loops) collect(l);
    for (const Loop& l : domain.hole_loops) collect(l);
    if (xs.empty()) return;
    std::sort(xs.begin(), xs.end());

    // Parity of the number of crossings strictly to the right of the node.
    std::size_t p = 0;
    for (int i = 0; i < frame.nx; ++i) {
        const double x = (frame.ix0 + i) * frame.h;
        while (p < xs.size() && xs[p] <= x) ++p;
        row[i] = ((xs.size() - p) % 2 == 1) ? 1 : 0;
    }
}

}  // namespace detail

namespace {

void mark_nodes_on_segment(RasterMask& mask, Point a, Point b, double eps) {
    // Walk the segment in half-cell steps and test the surrounding nodes.
    // A node lying on the segment is within a cell of some sample point.
    const double len = distance(a, b);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / mask.h)) * 2);
    for (int s = 0; s <= steps; ++s) {
        const Point p = a + (static_cast<double>(s) / steps) * (b - a);
        const int ci = static_cast<int>(std::floor(p.x / mask.h)) - mask.ix0;
        const int cj = static_cast<int>(std::floor(p.y / mask.h)) - mask.iy0;
        for (int dj = -1; dj <= 2; ++dj) {
            for (int di = -1; di <= 2; ++di) {
                const int i = ci + di;
                const int j = cj + dj;
                if (i < 0 || j < 0 || i >= mask.nx || j >= mask.ny) continue;
                if (!mask.inside[mask.idx(i, j)]) continue;
                if (point_on_segment(mask.node(i, j), a, b, eps))
                    mask.inside[mask.idx(i, j)] = 0;
            }
        }
    }
}

void block_edges_crossing(RasterMask& mask, Point a, Point b) {
    const double len = distance(a, b);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / mask.h)) * 2);
    auto test_cell = [&](int ci, int cj) {
        if (ci < -1 || cj < -1 || ci > mask.nx - 1 || cj > mask.ny - 1) return;
        // The four node-to-node edges bounding cell (ci, cj).
        struct EdgeRef { int i, j; bool horizontal; };
        const EdgeRef edges[4] = {
            {ci, cj, true},      // bottom
            {ci, cj + 1, true},  // top
            {ci, cj, false},     // left
            {ci + 1, cj, false}  // right
        };
        for (const EdgeRef& e : edges) {
            if (e.i < 0 || e.j < 0) continue;
            if (e.horizontal) {
                if (e.i + 1 >= mask.nx || e.j >= mask.ny) continue;
                if (segments_intersect(a, b, mask.node(e.i, e.j),
                                       mask.node(e.i + 1, e.j)))
                    mask.blocked_right[mask.idx(e.i, e.j)] = 1;
            } else {
                if (e.i >= mask.nx || e.j + 1 >= mask.ny) continue;
                if (segments_intersect(a, b, mask.node(e.i, e.j),
                                       mask.node(e.i, e.j + 1)))
                    mask.blocked_up[mask.idx(e.i, e.j)] = 1;
            }
        }
    };
    for (int s = 0; s <= steps; ++s) {
        const Point p = a + (static_cast<double>(s) / steps) * (b - a);
        const int ci = static_cast<int>(std::floor(p.x / mask.h)) - mask.ix0;
        const int cj = static_cast<int>(std::floor(p.y / mask.h)) - mask.iy0;
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) test_cell(ci + di, cj + dj);
    }
}

}  // namespace

RasterMask rasterize(const PlanarDomain& domain, double h) {
    validate(domain);
    if (!(h > 0.0)) throw std::invalid_argument("rasterize: h must be positive");

    const BoundingBox box = bounding_box(domain);
    double clearance = min_feature_clearance(domain);
    if (!std::isfinite(clearance))
        clearance = 0.5 * std::min(box.width(), box.height());
    if (h >= clearance) {
        throw std::invalid_argument(
            "rasterize: resolution too coarse: h = " + std::to_string(h) +
            " does not resolve the narrowest feature clearance " +
            std::to_string(clearance));
    }

    RasterMask mask;
    mask.h = h;
    mask.ix0 = static_cast<int>(std::floor(box.min.x / h)) - 2;
    mask.iy0 = static_cast<int>(std::floor(box.min.y / h)) - 2;
    const int ix1 = static_cast<int>(std::ceil(box.max.x / h)) + 2;
    const int iy1 = static_cast<int>(std::ceil(box.max.y / h)) + 2;
    mask.nx = ix1 - mask.ix0 + 1;
    mask.ny = iy1 - mask.iy0 + 1;
    const std::size_t n_nodes =
        static_cast<std::size_t>(mask.nx) * static_cast<std::size_t>(mask.ny);
    if (n_nodes > (std::size_t{1} << 25)) {
        throw std::invalid_argument(
            "rasterize: grid of " + std::to_string(n_nodes) +
            " nodes exceeds the supported size; increase h");
    }

    mask.inside.assign(n_nodes, 0);
    mask.blocked_right.assign(n_nodes, 0);
    mask.blocked_up.assign(n_nodes, 0);

    std::vector<std::uint8_t> row;
    for (int j = 0; j < mask.ny; ++j) {
        detail::scanline_row(domain, mask, j, row);
        std::copy(row.begin(), row.end(), mask.inside.begin() + mask.idx(0, j));
    }

    // Nodes exactly on a boundary element are boundary, hence outside.
    const double eps = 1e-9 * std::max({1.0, std::abs(box.min.x),
                                        std::abs(box.min.y), std::abs(box.max.x),
                                        std::abs(box.max.y)});
    auto segs = std::make_shared<std::vector<BoundarySegment>>(
        boundary_segments(domain));
    for (const BoundarySegment& s : *segs) mark_nodes_on_segment(mask, s.a, s.b, eps);

    for (const BoundarySegment& s : *segs)
        if (s.slit) block_edges_crossing(mask, s.a, s.b);

    if (mask.interior_count() == 0) {
        throw std::invalid_argument(
            "rasterize: resolution too coarse: no node falls inside the domain");
    }

    mask.domain = std::make_shared<const PlanarDomain>(domain);
    mask.segments = std::move(segs);
    return mask;
}

namespace {

/// Flood fill over a node predicate; returns the component label per node
/// (-1 where the predicate is false) and the component count.
template <typename Adjacent>
int label_components(const RasterMask& mask, const std::vector<std::uint8_t>& in_set,
                     std::vector<int>& label, Adjacent&& adjacent) {
    const std::size_t n = in_set.size();
    label.assign(n, -1);
    int next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (!in_set[start] || label[start] >= 0) continue;
        label[start] = next;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            const int i = static_cast<int>(cur % mask.nx);
            const int j = static_cast<int>(cur / mask.nx);
            adjacent(i, j, [&](int ni, int nj) {
                if (ni < 0 || nj < 0 || ni >= mask.nx || nj >= mask.ny) return;
                const std::size_t q = mask.idx(ni, nj);
                if (!in_set[q] || label[q] >= 0) return;
                label[q] = next;
                stack.push_back(q);
            });
        }
        ++next;
    }
    return next;
}

}  // namespace

TopologyReport topology(const RasterMask& mask) {
    TopologyReport rep;
    const std::size_t n = mask.inside.size();

    // Inside components: 4-adjacency, slit-blocked edges cut.
    std::vector<int> label;
    rep.n_components = label_components(
        mask, mask.inside, label, [&](int i, int j, auto&& visit) {
            if (i > 0 && mask.open_right(i - 1, j)) visit(i - 1, j);
            if (i + 1 < mask.nx && mask.open_right(i, j)) visit(i + 1, j);
            if (j > 0 && mask.open_up(i, j - 1)) visit(i, j - 1);
            if (j + 1 < mask.ny && mask.open_up(i, j)) visit(i, j + 1);
        });

    // Complement components: 8-adjacency; bounded unless touching the frame.
    std::vector<std::uint8_t> outside(n);
    for (std::size_t p = 0; p < n; ++p) outside[p] = mask.inside[p] ? 0 : 1;
    std::vector<int> clabel;
    const int n_comp = label_components(
        mask, outside, clabel, [&](int i, int j, auto&& visit) {
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di)
                    if (di != 0 || dj != 0) visit(i + di, j + dj);
        });
    std::vector<std::uint8_t> touches_frame(n_comp, 0);
    for (int j = 0; j < mask.ny; ++j) {
        for (int i = 0; i < mask.nx; ++i) {
            if (j != 0 && j != mask.ny - 1 && i != 0 && i != mask.nx - 1) continue;
            const int c = clabel[mask.idx(i, j)];
            if (c >= 0) touches_frame[c] = 1;
        }
    }
    for (int c = 0; c < n_comp; ++c)
        if (!touches_frame[c]) ++rep.n_complement_bounded;

    // Boundary node set: outside nodes 4-adjacent to inside, under 8-adjacency.
    std::vector<std::uint8_t> boundary(n, 0);
    for (int j = 0; j < mask.ny; ++j) {
        for (int i = 0; i < mask.nx; ++i) {
            if (mask.inside[mask.idx(i, j)]) continue;
            const bool adj = mask.is_inside(i - 1, j) || mask.is_inside(i + 1, j) ||
                             mask.is_inside(i, j - 1) || mask.is_inside(i, j + 1);
            if (adj) boundary[mask.idx(i, j)] = 1;
        }
    }
    std::vector<int> blabel;
    rep.n_boundary_components = label_components(
        mask, boundary, blabel, [&](int i, int j, auto&& visit) {
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di)
                    if (di != 0 || dj != 0) visit(i + di, j + dj);
        });
    return rep;
}

}  // namespace shapelab
