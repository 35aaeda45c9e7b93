#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "convexreg/geometry/envelope.hpp"
#include "convexreg/geometry/grid.hpp"
#include "convexreg/smoothing/bandwidth.hpp"
#include "convexreg/smoothing/dataset.hpp"
#include "convexreg/smoothing/sampling.hpp"
#include "convexreg/smoothing/smoother.hpp"

namespace convexreg::pipeline {

struct SmootherSpec
{
  smoothing::SmootherSettings settings;
  // Fixed bandwidth; empty means leave-one-out cross-validation.
  std::optional<double> bandwidth;
  // CV candidates; empty means default_bandwidth_candidates().
  std::vector<double> cv_candidates;
};

struct GridSpec
{
  std::size_t per_axis = 100;
  // Explicit grid points; overrides per_axis.
  std::optional<geometry::PointSet> points;
  // Grid domain; defaults to the dataset's domain or bounding box.
  std::optional<geometry::PolyhedralDomain> domain;
};

struct PipelineConfig
{
  SmootherSpec smoother;
  GridSpec grid;
  geometry::Shape shape = geometry::Shape::convex;
  smoothing::SamplingPolicy sampling = smoothing::SamplingPolicy::strict;
  geometry::HullOptions hull;
};

// Everything produced on the way to the envelope. For concave fits the
// smoother and samples refer to the negated responses.
struct ConvexFit
{
  smoothing::SmootherFit smoother;
  geometry::Grid grid;
  smoothing::GridSamples samples;
  geometry::ConvexEnvelope envelope;
  std::optional<smoothing::CvResult> cv;
};

geometry::Grid make_grid(const GridSpec& spec, const geometry::PolyhedralDomain& fallback);

// Smooth, sample on the grid, take the lower hull. Errors keep their kind and
// gain a prefix naming the failing step.
ConvexFit fit_convex_detailed(const smoothing::Dataset& data, const PipelineConfig& config);
geometry::ConvexEnvelope fit_convex(const smoothing::Dataset& data, const PipelineConfig& config);

} // namespace convexreg::pipeline
