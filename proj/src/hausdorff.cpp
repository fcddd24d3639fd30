#include "shapelab/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shapelab/distance_field.hpp"
#include "shapelab/raster.hpp"

namespace shapelab {

double hausdorff_distance(const std::vector<Point>& a,
                          const std::vector<Point>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff_distance: empty point set");
    auto directed = [](const std::vector<Point>& from, const std::vector<Point>& to) {
        double worst = 0.0;
        for (Point p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (Point q : to) best = std::min(best, distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double co_hausdorff(const PlanarDomain& a, const PlanarDomain& b, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("co_hausdorff: h must be positive");
    validate(a);
    validate(b);

    BoundingBox box = bounding_box(a);
    box.include(bounding_box(b));
    const double pad = std::max(box.diameter(), 8.0 * h);

    RasterMask frame;
    frame.h = h;
    frame.ix0 = static_cast<int>(std::floor((box.min.x - pad) / h)) - 1;
    frame.iy0 = static_cast<int>(std::floor((box.min.y - pad) / h)) - 1;
    frame.nx = static_cast<int>(std::ceil((box.max.x + pad) / h)) + 1 - frame.ix0 + 1;
    frame.ny = static_cast<int>(std::ceil((box.max.y + pad) / h)) + 1 - frame.iy0 + 1;
    const std::size_t n =
        static_cast<std::size_t>(frame.nx) * static_cast<std::size_t>(frame.ny);
    if (n > (std::size_t{1} << 25))
        throw std::invalid_argument("co_hausdorff: grid too large; increase h");

    // Complement node sets of both domains on the shared frame.  Slits
    // belong to the complement of the open set; being 1-dimensional they
    // never trip the parity test, so they are snapped to the nearest nodes.
    std::vector<std::uint8_t> comp_a(n), comp_b(n);
    std::vector<std::uint8_t> row;
    for (int j = 0; j < frame.ny; ++j) {
        detail::scanline_row(a, frame, j, row);
        for (int i = 0; i < frame.nx; ++i)
            comp_a[static_cast<std::size_t>(j) * frame.nx + i] = row[i] ? 0 : 1;
        detail::scanline_row(b, frame, j, row);
        for (int i = 0; i < frame.nx; ++i)
            comp_b[static_cast<std::size_t>(j) * frame.nx + i] = row[i] ? 0 : 1;
    }
    auto mark_slits = [&frame, n](const PlanarDomain& dom,
                                  std::vector<std::uint8_t>& comp) {
        if (!dom.has_slits()) return;
        std::vector<BoundarySegment> segs;
        for (const Polyline& slit : dom.slits)
            for (std::size_t i = 0; i + 1 < slit.size(); ++i)
                segs.push_back({slit[i], slit[i + 1], true});
        const std::vector<double> dist = distance_to_segments(frame, segs);
        for (std::size_t p = 0; p < n; ++p)
            if (dist[p] <= 0.5 * frame.h) comp[p] = 1;
    };
    mark_slits(a, comp_a);
    mark_slits(b, comp_b);

    const std::vector<double> to_a = grid_edt_sq(frame.nx, frame.ny, comp_a);
    const std::vector<double> to_b = grid_edt_sq(frame.nx, frame.ny, comp_b);
    double worst_sq = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        if (comp_a[p]) worst_sq = std::max(worst_sq, to_b[p]);
        if (comp_b[p]) worst_sq = std::max(worst_sq, to_a[p]);
    }
    return std::sqrt(worst_sq) * h;
}

}  // namespace shapelab
