#include "shapelab/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shapelab {

namespace {

constexpr double kInf = 1e30;

/// Uniform buckets over the frame; each bucket lists the segments passing
/// within one bucket of it, so a ring scan never misses a candidate.
class BucketGrid {
public:
    BucketGrid(const std::vector<BoundarySegment>& segs, const RasterMask& mask) {
        const double w = (mask.nx - 1) * mask.h;
        const double hh = (mask.ny - 1) * mask.h;
        cb_ = std::max({4.0 * mask.h, std::max(w, hh) / 64.0, 1e-12});
        bx0_ = static_cast<int>(std::floor(mask.ix0 * mask.h / cb_)) - 1;
        by0_ = static_cast<int>(std::floor(mask.iy0 * mask.h / cb_)) - 1;
        bnx_ = static_cast<int>(std::floor((mask.ix0 + mask.nx - 1) * mask.h / cb_)) + 2 - bx0_;
        bny_ = static_cast<int>(std::floor((mask.iy0 + mask.ny - 1) * mask.h / cb_)) + 2 - by0_;
        lists_.resize(static_cast<std::size_t>(bnx_) * bny_);
        for (std::size_t s = 0; s < segs.size(); ++s) insert(segs[s], static_cast<int>(s));
    }

    double query(Point p, const std::vector<BoundarySegment>& segs) const {
        const int ci = std::clamp(cell_x(p.x), 0, bnx_ - 1);
        const int cj = std::clamp(cell_y(p.y), 0, bny_ - 1);
        double best = kInf;
        const int max_ring = std::max(bnx_, bny_);
        for (int ring = 0; ring <= max_ring; ++ring) {
            scan_ring(ci, cj, ring, p, segs, best);
            // Cells beyond this ring are at least ring * cb away from p.
            if (best <= ring * cb_) break;
        }
        return best;
    }

private:
    int cell_x(double x) const { return static_cast<int>(std::floor(x / cb_)) - bx0_; }
    int cell_y(double y) const { return static_cast<int>(std::floor(y / cb_)) - by0_; }

    void add(int i, int j, int s) {
        if (i < 0 || j < 0 || i >= bnx_ || j >= bny_) return;
        std::vector<int>& list = lists_[static_cast<std::size_t>(j) * bnx_ + i];
        if (list.empty() || list.back() != s) list.push_back(s);
    }

    void insert(const BoundarySegment& seg, int s) {
        const double len = distance(seg.a, seg.b);
        const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * len / cb_)));
        for (int t = 0; t <= steps; ++t) {
            const Point p = seg.a + (static_cast<double>(t) / steps) * (seg.b - seg.a);
            const int ci = cell_x(p.x);
            const int cj = cell_y(p.y);
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) add(ci + di, cj + dj, s);
        }
    }

    void scan_ring(int ci, int cj, int ring, Point p,
                   const std::vector<BoundarySegment>& segs, double& best) const {
        const int i_lo = ci - ring, i_hi = ci + ring;
        const int j_lo = cj - ring, j_hi = cj + ring;
        auto scan_cell = [&](int i, int j) {
            if (i < 0 || j < 0 || i >= bnx_ || j >= bny_) return;
            for (int s : lists_[static_cast<std::size_t>(j) * bnx_ + i]) {
                const double d = dist_point_segment(p, segs[s].a, segs[s].b);
                best = std::min(best, d);
            }
        };
        if (ring == 0) {
            scan_cell(ci, cj);
            return;
        }
        for (int i = i_lo; i <= i_hi; ++i) {
            scan_cell(i, j_lo);
            scan_cell(i, j_hi);
        }
        for (int j = j_lo + 1; j < j_hi; ++j) {
            scan_cell(i_lo, j);
            scan_cell(i_hi, j);
        }
    }

    double cb_ = 0.0;
    int bx0_ = 0, by0_ = 0, bnx_ = 0, bny_ = 0;
    std::vector<std::vector<int>> lists_;
};

void dt1d(const std::vector<double>& f, int n, std::vector<double>& d,
          std::vector<int>& v, std::vector<double>& z) {
    // Lower envelope of parabolas rooted at (i, f[i]); Felzenszwalb-Huttenlocher.
    // Infinite entries carry no parabola; the caller guarantees at least one
    // finite entry.
    int q0 = 0;
    while (q0 < n && f[q0] >= kInf) ++q0;
    int k = 0;
    v[0] = q0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = q0 + 1; q < n; ++q) {
        if (f[q] >= kInf) continue;
        double s;
        while (true) {
            const int p = v[k];
            s = ((f[q] + q * static_cast<double>(q)) - (f[p] + p * static_cast<double>(p))) /
                (2.0 * (q - p));
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const int p = v[k];
        d[q] = (q - static_cast<double>(p)) * (q - p) + f[p];
    }
}

}  // namespace

std::vector<double> grid_edt_sq(int nx, int ny, const std::vector<std::uint8_t>& seed) {
    std::vector<double> g(static_cast<std::size_t>(nx) * ny, kInf);
    std::vector<double> f(std::max(nx, ny)), d(std::max(nx, ny));
    std::vector<int> v(std::max(nx, ny));
    std::vector<double> z(std::max(nx, ny) + 1);

    // Column pass: squared distance to the nearest seed within the column.
    for (int i = 0; i < nx; ++i) {
        bool any = false;
        for (int j = 0; j < ny; ++j) {
            f[j] = seed[static_cast<std::size_t>(j) * nx + i] ? 0.0 : kInf;
            any = any || f[j] == 0.0;
        }
        if (!any) continue;
        dt1d(f, ny, d, v, z);
        for (int j = 0; j < ny; ++j) g[static_cast<std::size_t>(j) * nx + i] = d[j];
    }
    // Row pass over the column minima.
    std::vector<double> out(g.size(), kInf);
    for (int j = 0; j < ny; ++j) {
        bool any = false;
        for (int i = 0; i < nx; ++i) {
            f[i] = g[static_cast<std::size_t>(j) * nx + i];
            any = any || f[i] < kInf;
        }
        if (!any) continue;
        dt1d(f, nx, d, v, z);
        for (int i = 0; i < nx; ++i) out[static_cast<std::size_t>(j) * nx + i] = d[i];
    }
    return out;
}

std::vector<double> distance_to_segments(
    const RasterMask& frame, const std::vector<BoundarySegment>& segments) {
    if (segments.empty())
        throw std::invalid_argument("distance_to_segments: no segments");
    const BucketGrid buckets(segments, frame);
    std::vector<double> out(static_cast<std::size_t>(frame.nx) * frame.ny);
    for (int j = 0; j < frame.ny; ++j)
        for (int i = 0; i < frame.nx; ++i)
            out[static_cast<std::size_t>(j) * frame.nx + i] =
                buckets.query(frame.node(i, j), segments);
    return out;
}

DistanceField distance_field(const RasterMask& mask, DistanceRoute route) {
    DistanceRoute chosen = route;
    if (chosen == DistanceRoute::automatic)
        chosen = mask.segments ? DistanceRoute::exact_geometry : DistanceRoute::grid_edt;
    if (chosen == DistanceRoute::exact_geometry && !mask.segments)
        throw std::invalid_argument(
            "distance_field: mask carries no geometry for the exact route");

    DistanceField field;
    field.grid = std::make_shared<const RasterMask>(mask);
    field.route = chosen;
    field.d.assign(mask.inside.size(), 0.0);

    const RasterMask& m = *field.grid;
    if (chosen == DistanceRoute::exact_geometry) {
        const BucketGrid buckets(*m.segments, m);
        for (int j = 0; j < m.ny; ++j) {
            for (int i = 0; i < m.nx; ++i) {
                const std::size_t p = m.idx(i, j);
                if (!m.inside[p]) continue;
                field.d[p] = buckets.query(m.node(i, j), *m.segments);
            }
        }
    } else {
        std::vector<std::uint8_t> seed(m.inside.size(), 0);
        for (int j = 0; j < m.ny; ++j) {
            for (int i = 0; i < m.nx; ++i) {
                if (m.inside[m.idx(i, j)]) continue;
                const bool adj = m.is_inside(i - 1, j) || m.is_inside(i + 1, j) ||
                                 m.is_inside(i, j - 1) || m.is_inside(i, j + 1);
                if (adj) seed[m.idx(i, j)] = 1;
            }
        }
        const std::vector<double> sq = grid_edt_sq(m.nx, m.ny, seed);
        for (std::size_t p = 0; p < field.d.size(); ++p)
            if (m.inside[p]) field.d[p] = std::sqrt(sq[p]) * m.h;
    }

    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            const double v = field.d[m.idx(i, j)];
            if (v > field.max_distance) {
                field.max_distance = v;
                field.argmax_i = i;
                field.argmax_j = j;
            }
        }
    }
    return field;
}

double inradius(const DistanceField& field) { return field.max_distance; }

}  // namespace shapelab
