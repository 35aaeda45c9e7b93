#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/geometry/point_set.hpp"

namespace convexreg::geometry {

struct LatticeLayout
{
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> spacing;
  std::size_t per_axis = 0;
};

// Finite point set M with conv(M) = Q and covering radius `mesh`: every x in
// Q is a convex combination of at most d+1 points of M within `mesh` of x.
class Grid
{
public:
  const PolyhedralDomain& domain() const noexcept { return domain_; }
  const PointSet& points() const noexcept { return points_; }
  double mesh() const noexcept { return mesh_; }
  std::size_t size() const noexcept { return points_.size(); }

  // Set for box lattices; points are ordered with axis 0 varying fastest.
  const std::optional<LatticeLayout>& lattice() const noexcept { return lattice_; }

  // Triangulation of non-lattice grids (indices into points()), used to
  // answer cover queries.
  const std::vector<std::vector<std::size_t>>& simplices() const noexcept { return simplices_; }

  friend Grid uniform_grid(const PolyhedralDomain& domain, std::size_t per_axis);
  friend Grid explicit_grid(const PolyhedralDomain& domain, PointSet points);

private:
  PolyhedralDomain domain_;
  PointSet points_;
  double mesh_ = 0.0;
  std::optional<LatticeLayout> lattice_;
  std::vector<std::vector<std::size_t>> simplices_;
};

// per_axis^d lattice over a box domain, corners included exactly.
// mesh = max spacing * sqrt(d).
Grid uniform_grid(const PolyhedralDomain& domain, std::size_t per_axis);

// Lattice over the bounding box intersected with a general polyhedral
// domain, plus the domain's vertices. Falls back to uniform_grid for boxes.
Grid lattice_grid(const PolyhedralDomain& domain, std::size_t per_axis);

// Arbitrary points inside the domain that include every domain vertex. The
// mesh is the longest edge of a Delaunay triangulation of the points (the
// largest gap in 1-d), a guaranteed covering radius.
Grid explicit_grid(const PolyhedralDomain& domain, PointSet points);

} // namespace convexreg::geometry
