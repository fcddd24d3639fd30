#ifndef SHAPELAB_DISTANCE_FIELD_HPP
#define SHAPELAB_DISTANCE_FIELD_HPP

/// @file distance_field.hpp
/// Distance to the boundary, sampled at the interior grid nodes.
///
/// Two routes produce the field.  When the mask still carries its source
/// geometry the distance at a node is the exact Euclidean distance to the
/// nearest boundary segment (loops and slits alike), accelerated by a
/// uniform bucket grid; this is the default because interior parallel
/// profiles inherit its accuracy directly.  Masks without geometry (level
/// sets of another field) fall back to an exact Euclidean distance
/// transform of the boundary node set.

#include <memory>
#include <vector>

#include "shapelab/raster.hpp"

namespace shapelab {

enum class DistanceRoute {
    automatic,       // exact_geometry when available, else grid_edt
    exact_geometry,  // distance to the boundary segments
    grid_edt         // distance to outside nodes 4-adjacent to inside ones
};

struct DistanceField {
    std::shared_ptr<const RasterMask> grid;
    std::vector<double> d;  // length units, 0 at non-inside nodes
    DistanceRoute route = DistanceRoute::automatic;
    double max_distance = 0.0;  // the inradius estimate
    int argmax_i = 0;
    int argmax_j = 0;

    double at(int i, int j) const { return d[grid->idx(i, j)]; }
};

DistanceField distance_field(const RasterMask& mask,
                             DistanceRoute route = DistanceRoute::automatic);

/// Largest sampled distance; within one cell diagonal of the true inradius.
double inradius(const DistanceField& field);

/// Exact squared Euclidean distance transform on an nx-by-ny node grid,
/// in node units, toward the set flagged in `seed`.  Nodes with no seed
/// anywhere get a large finite value.
std::vector<double> grid_edt_sq(int nx, int ny,
                                const std::vector<std::uint8_t>& seed);

/// Exact distance from every node of the frame (inside or not) to the
/// nearest of the given segments.  Only the frame fields of `frame` are
/// used; its inside flags may be empty.
std::vector<double> distance_to_segments(
    const RasterMask& frame, const std::vector<BoundarySegment>& segments);

}  // namespace shapelab

#endif
