#pragma once

#include <cstddef>
#include <vector>

#include "convexreg/geometry/point_set.hpp"

namespace convexreg::geometry {

struct HullFacet
{
  std::vector<std::size_t> vertices; // indices into the input point set
  std::vector<double> normal;        // unit outward normal
  double offset = 0.0;               // normal . p <= offset for hull points
};

// Default absolute tolerance for a point set: 1e-13 times the coordinate
// scale (at least 1).
double hull_tolerance(const PointSet& points);

// Indices of a maximal affinely independent subset, chosen greedily (lexicographic
// minimum first, then repeatedly the point farthest from the current affine hull).
// The affine rank of the set is the returned size minus one.
std::vector<std::size_t> affine_basis(const PointSet& points, double eps);

// Simplicial convex hull of a full-dimensional point set in R^D, D >= 2.
// Points within eps of the current hull are treated as interior, and
// coplanar facets are not merged. Throws degenerate_geometry when the set
// does not span R^D.
std::vector<HullFacet> convex_hull(const PointSet& points, double eps);
std::vector<HullFacet> convex_hull(const PointSet& points);

} // namespace convexreg::geometry
