#pragma once

#include <cstddef>
#include <vector>

#include "convexreg/geometry/grid.hpp"
#include "convexreg/smoothing/smoother.hpp"

namespace convexreg::smoothing {

// strict: any unevaluable grid point is a sampling error.
// lenient: such points are left out and counted.
enum class SamplingPolicy { strict, lenient };

struct GridSamples
{
  geometry::PointSet points;
  std::vector<double> values;
  std::vector<std::size_t> grid_indices; // grid index of each kept sample
  std::vector<std::size_t> failed;       // grid indices that could not be evaluated
  std::size_t fallback_count = 0;        // samples where local-poly fell back to the mean

  std::size_t warning_count() const noexcept { return failed.size(); }
};

GridSamples sample_on_grid(const SmootherFit& fit, const geometry::Grid& grid,
                           SamplingPolicy policy = SamplingPolicy::strict);
GridSamples sample_on_grid_serial(const SmootherFit& fit, const geometry::Grid& grid,
                                  SamplingPolicy policy = SamplingPolicy::strict);

} // namespace convexreg::smoothing
