#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/pipeline/diagnostics.hpp"

namespace convexreg::pipeline {

struct RateCheckConfig
{
  RealFunction f_true;
  geometry::PolyhedralDomain domain; // must be a box
  std::vector<std::size_t> n_list;   // strictly increasing
  std::size_t replications = 20;
  std::uint64_t seed = 1;
  double sigma = 0.1;
};

struct RateRow
{
  std::size_t n = 0;
  double bandwidth = 0.0; // Tran schedule
  double delta = 0.0;     // target mesh h_n / log n
  double mesh = 0.0;      // achieved grid mesh (<= delta)
  std::size_t per_axis = 0;
  double mean_sup_error = 0.0;
};

struct RateCheckResult
{
  std::vector<RateRow> rows;
  std::size_t decreases = 0;      // consecutive pairs with a strict decrease
  double decrease_fraction = 0.0; // decreases / (rows - 1)
};

// Per n: simulate uniform designs, fit a moving window at Tran's bandwidth,
// convexify on a lattice with mesh <= h_n / log n and record the sup error
// on the dense test grid. Replication r of size n uses stream (n, r).
RateCheckResult empirical_rate_check(const RateCheckConfig& config);

// Smallest per-axis count whose lattice mesh does not exceed delta.
std::size_t per_axis_for_mesh(const geometry::PolyhedralDomain& box, double delta);

} // namespace convexreg::pipeline
