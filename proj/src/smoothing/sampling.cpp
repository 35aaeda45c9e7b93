#include "convexreg/smoothing/sampling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "convexreg/error.hpp"
#include "convexreg/parallel.hpp"

namespace convexreg::smoothing {

namespace {

struct Slot
{
  PointEstimate estimate;
  bool ok = false;
  std::string error;
};

Slot sample_one(const SmootherFit& fit, const geometry::PointSet& pts, std::size_t i)
{
  Slot s;
  try {
    s.estimate = fit.evaluate(pts[i]);
    s.ok = std::isfinite(s.estimate.value);
    if (!s.ok) {
      s.error = "non-finite estimate";
    }
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::smoothing) {
      throw;
    }
    s.error = e.what();
  }
  return s;
}

GridSamples collect(const geometry::Grid& grid, const std::vector<Slot>& slots,
                    SamplingPolicy policy)
{
  const auto& pts = grid.points();
  GridSamples out{ geometry::PointSet(pts.dim()), {}, {}, {}, 0 };
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].ok) {
      if (policy == SamplingPolicy::strict) {
        fail(ErrorKind::sampling,
             "smoother cannot be evaluated at grid point " + std::to_string(i) + ": " +
               slots[i].error);
      }
      out.failed.push_back(i);
      continue;
    }
    out.points.push_back(pts[i]);
    out.values.push_back(slots[i].estimate.value);
    out.grid_indices.push_back(i);
    if (slots[i].estimate.fallback) {
      ++out.fallback_count;
    }
  }
  return out;
}

} // namespace

GridSamples sample_on_grid(const SmootherFit& fit, const geometry::Grid& grid,
                           SamplingPolicy policy)
{
  const auto& pts = grid.points();
  if (pts.dim() != fit.data().dim()) {
    fail(ErrorKind::invalid_input, "grid and smoother dimensions differ");
  }
  std::vector<Slot> slots(pts.size());
  constexpr std::size_t block = 64;
  const std::size_t blocks = (pts.size() + block - 1) / block;
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(pts.size(), (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) {
      slots[i] = sample_one(fit, pts, i);
    }
  });
  return collect(grid, slots, policy);
}

GridSamples sample_on_grid_serial(const SmootherFit& fit, const geometry::Grid& grid,
                                  SamplingPolicy policy)
{
  const auto& pts = grid.points();
  if (pts.dim() != fit.data().dim()) {
    fail(ErrorKind::invalid_input, "grid and smoother dimensions differ");
  }
  std::vector<Slot> slots;
  slots.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    slots.push_back(sample_one(fit, pts, i));
  }
  return collect(grid, slots, policy);
}

} // namespace convexreg::smoothing
