#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convexreg/geometry/grid.hpp"

namespace convexreg::geometry {

struct CoverTerm
{
  std::size_t index; // into grid.points()
  std::vector<double> point;
  double weight;
};

// Writes x as a convex combination of at most d+1 grid points, each within
// grid.mesh() of x. Lattice grids use the Kuhn simplex of the containing cell
// with every odd axis mirrored (in 2-d each cell splits along its
// anti-diagonal); other grids use their stored triangulation. Zero weights
// are omitted.
std::vector<CoverTerm> convex_combination_cover(const Grid& grid, std::span<const double> x);

} // namespace convexreg::geometry
