#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/geometry/point_set.hpp"

namespace convexreg::smoothing {

// Observations (x_i, y_i), i = 1..n, of y = f(x) + e.
struct Dataset
{
  geometry::PointSet xs;
  std::vector<double> ys;
  std::optional<geometry::PolyhedralDomain> domain;

  std::size_t dim() const noexcept { return xs.dim(); }
  std::size_t size() const noexcept { return ys.size(); }

  // n >= 1, matching sizes, finite values; throws invalid_input otherwise.
  void validate() const;

  // The declared domain, or the bounding box of the xs.
  geometry::PolyhedralDomain domain_or_bounding_box() const;
};

Dataset make_dataset(geometry::PointSet xs, std::vector<double> ys,
                     std::optional<geometry::PolyhedralDomain> domain = std::nullopt);

} // namespace convexreg::smoothing
