#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "convexreg/geometry/point_set.hpp"
#include "convexreg/pipeline/pipeline.hpp"
#include "convexreg/sim/simulation.hpp"

namespace convexreg::sim {

// Pointwise moments of an estimator across replications. The variance uses
// divisor R so that mse = variance + bias2 holds exactly up to rounding.
struct MomentSurface
{
  geometry::PointSet points;
  std::vector<double> truth;
  std::vector<double> mean;
  std::vector<double> variance;
  std::vector<double> bias2;
  std::vector<double> mse;
  std::size_t replications = 0;

  double max_decomposition_error() const;
};

// Welford accumulation of the deviations from the truth, fed in order.
class MomentAccumulator
{
public:
  explicit MomentAccumulator(std::vector<double> truth);

  void add(std::span<const double> estimate);
  std::size_t count() const noexcept { return count_; }
  MomentSurface finish(geometry::PointSet points) const;

private:
  std::vector<double> truth_;
  std::vector<double> mean_dev_;
  std::vector<double> m2_;
  std::vector<double> sum_sq_;
  std::size_t count_ = 0;
};

struct MomentOptions
{
  // Also collect the moments of the raw smoother.
  bool include_smoother = false;
  // Called once per replication, possibly from several threads at once.
  std::function<void(std::size_t, const pipeline::ConvexFit&)> on_replication;
};

struct MomentStudy
{
  MomentSurface estimator;
  std::optional<MomentSurface> smoother;
};

// The spec's pipeline with the grid domain pinned to the simulation domain.
pipeline::PipelineConfig resolved_pipeline(const SimSpec& spec);

// Replications run in parallel; results are folded in replication order, so
// the output does not depend on the thread count. A failing replication
// aborts the study with its index in the message.
MomentStudy moment_study(const SimSpec& spec, const MomentOptions& options = {});
MomentStudy moment_study_serial(const SimSpec& spec, const MomentOptions& options = {});

} // namespace convexreg::sim
