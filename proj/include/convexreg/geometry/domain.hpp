#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convexreg/geometry/point_set.hpp"

namespace convexreg::geometry {

struct Halfspace
{
  std::vector<double> normal; // unit outward normal
  double offset = 0.0;        // normal . x <= offset inside
};

// Bounded polyhedron given as the convex hull of its vertices. Every vertex
// is an extreme point.
class PolyhedralDomain
{
public:
  PolyhedralDomain() = default;

  // Validates that every vertex is extreme and the set is full dimensional.
  static PolyhedralDomain from_vertices(PointSet vertices);

  // Convex hull of arbitrary points; non-extreme points are dropped.
  static PolyhedralDomain hull_of(const PointSet& points);

  std::size_t dim() const noexcept { return vertices_.dim(); }
  const PointSet& vertices() const noexcept { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const noexcept { return halfspaces_; }
  bool is_box() const noexcept { return is_box_; }

  // Axis-aligned bounding box (equal to the domain for boxes).
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }

  bool contains(std::span<const double> x, double tol = 1e-9) const;
  double diameter() const;

  friend PolyhedralDomain make_box_domain(std::span<const double> lower,
                                          std::span<const double> upper);

private:
  void finalize_bounds();

  PointSet vertices_;
  std::vector<Halfspace> halfspaces_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  bool is_box_ = false;
};

// Box [lower, upper] with its 2^d corners; corner i has coordinate k at the
// upper bound when bit k of i is set.
PolyhedralDomain make_box_domain(std::span<const double> lower, std::span<const double> upper);
PolyhedralDomain make_box_domain(std::initializer_list<double> lower,
                                 std::initializer_list<double> upper);

} // namespace convexreg::geometry
