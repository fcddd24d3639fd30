#ifndef SHAPELAB_RASTER_HPP
#define SHAPELAB_RASTER_HPP

/// @file raster.hpp
/// Node-centered rasterization of planar domains.
///
/// Nodes sit at integer multiples of the grid step h, so geometry given in
/// exact h multiples (unit squares, axis-aligned slits) lands exactly on
/// nodes and is classified reproducibly: nodes on any boundary element are
/// outside.  Slits thinner than a cell are carried as blocked grid edges,
/// which the solver and topology walkers treat as Dirichlet walls.

#include <cstdint>
#include <memory>
#include <vector>

#include "shapelab/geometry.hpp"

namespace shapelab {

struct RasterMask {
    double h = 0.0;
    int ix0 = 0;   // node (i, j) has position ((ix0 + i) * h, (iy0 + j) * h)
    int iy0 = 0;
    int nx = 0;    // node counts per axis
    int ny = 0;
    std::vector<std::uint8_t> inside;         // nx * ny, row-major
    std::vector<std::uint8_t> blocked_right;  // edge (i,j)-(i+1,j) crosses a slit
    std::vector<std::uint8_t> blocked_up;     // edge (i,j)-(i,j+1) crosses a slit

    /// Source geometry; null for masks derived from level sets.
    std::shared_ptr<const PlanarDomain> domain;
    std::shared_ptr<const std::vector<BoundarySegment>> segments;

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * nx + i;
    }
    Point node(int i, int j) const {
        return {(ix0 + i) * h, (iy0 + j) * h};
    }
    bool is_inside(int i, int j) const {
        return i >= 0 && j >= 0 && i < nx && j < ny && inside[idx(i, j)] != 0;
    }
    /// True when inside nodes (i,j) and (i+1,j) communicate (no slit between).
    bool open_right(int i, int j) const { return blocked_right[idx(i, j)] == 0; }
    bool open_up(int i, int j) const { return blocked_up[idx(i, j)] == 0; }

    std::size_t interior_count() const;
    double area_estimate() const { return interior_count() * h * h; }
};

struct TopologyReport {
    int n_components = 0;           // connected pieces of the inside node set
    int n_complement_bounded = 0;   // bounded holes seen by the grid
    int n_boundary_components = 0;  // components of the boundary node set
};

/// Rasterizes a validated domain onto the aligned grid of step h with a
/// two-cell margin around the bounding box.
///
/// Throws std::invalid_argument when h is too coarse for the narrowest
/// feature (pairwise element clearance, or half the smaller bounding box
/// extent when the domain has a single boundary element), when the grid
/// would be absurdly large, or when no node falls inside.
RasterMask rasterize(const PlanarDomain& domain, double h);

/// Component counts by flood fill.  Inside nodes connect by 4-adjacency
/// minus blocked edges; complement nodes connect by 8-adjacency (the dual
/// choice keeps grid topology consistent with the continuum), and a
/// complement component is bounded when it never reaches the frame border.
/// Boundary nodes are outside nodes 4-adjacent to an inside node, counted
/// under 8-adjacency.
TopologyReport topology(const RasterMask& mask);

namespace detail {
/// Fills one row of parity-inside flags for nodes (0..nx-1, j) against the
/// loops of a domain.  Exposed for reuse by the padded two-sided estimators.
void scanline_row(const PlanarDomain& domain, const RasterMask& frame, int j,
                  std::vector<std::uint8_t>& row);
}  // namespace detail

}  // namespace shapelab

#endif
