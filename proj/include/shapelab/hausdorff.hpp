#ifndef SHAPELAB_HAUSDORFF_HPP
#define SHAPELAB_HAUSDORFF_HPP

/// @file hausdorff.hpp
/// Hausdorff distance between point sets and the complement-Hausdorff
/// distance between domains, the metric under which interior parallel
/// approximants converge to their domain.

#include <vector>

#include "shapelab/geometry.hpp"

namespace shapelab {

/// Symmetric Hausdorff distance between two finite point sets.
/// Throws std::invalid_argument when either set is empty.
double hausdorff_distance(const std::vector<Point>& a,
                          const std::vector<Point>& b);

/// Hausdorff distance between the complements of two domains, sampled on a
/// shared node grid of step h that pads the joint bounding box by its own
/// diameter.  Far away both complements coincide, so the padding does not
/// truncate the supremum.  Slits count as complement (the open set loses
/// them), snapped to the nodes within h/2.  Exact on the node sets via a
/// Euclidean distance transform; the sampling error is O(h).
double co_hausdorff(const PlanarDomain& a, const PlanarDomain& b, double h);

}  // namespace shapelab

#endif
