#include "convexreg/pipeline/pipeline.hpp"

#include <memory>
#include <string>
#include <utility>

#include "convexreg/error.hpp"

namespace convexreg::pipeline {

namespace {

template <class Step>
auto attributed(const char* step, Step&& body)
{
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(step) + " step: " + e.what());
  }
}

} // namespace

geometry::Grid make_grid(const GridSpec& spec, const geometry::PolyhedralDomain& fallback)
{
  const geometry::PolyhedralDomain& domain = spec.domain ? *spec.domain : fallback;
  if (spec.points) {
    return geometry::explicit_grid(domain, *spec.points);
  }
  return geometry::lattice_grid(domain, spec.per_axis);
}

ConvexFit fit_convex_detailed(const smoothing::Dataset& input, const PipelineConfig& config)
{
  attributed("input", [&] { input.validate(); return 0; });
  auto data = std::make_shared<smoothing::Dataset>(input);
  if (config.shape == geometry::Shape::concave) {
    for (auto& y : data->ys) {
      y = -y;
    }
  }
  std::shared_ptr<const smoothing::Dataset> shared = data;

  std::optional<smoothing::CvResult> cv;
  const double h = attributed("smoothing", [&] {
    if (config.smoother.bandwidth) {
      return *config.smoother.bandwidth;
    }
    const auto candidates = config.smoother.cv_candidates.empty()
                              ? smoothing::default_bandwidth_candidates(*shared)
                              : config.smoother.cv_candidates;
    cv = smoothing::cross_validate_bandwidth(*shared, config.smoother.settings, candidates);
    return cv->bandwidth;
  });
  auto smoother =
    attributed("smoothing", [&] { return smoothing::fit_smoother(shared, config.smoother.settings, h); });

  auto grid = attributed("grid", [&] { return make_grid(config.grid, shared->domain_or_bounding_box()); });
  auto samples =
    attributed("sampling", [&] { return smoothing::sample_on_grid(smoother, grid, config.sampling); });

  auto envelope = attributed("convexification", [&] {
    geometry::HullOptions options = config.hull;
    if (!options.domain) {
      options.domain = grid.domain();
    }
    auto env = geometry::lower_hull(samples.points, samples.values, options);
    return config.shape == geometry::Shape::concave ? env.with_shape(geometry::Shape::concave) : env;
  });

  return { std::move(smoother), std::move(grid), std::move(samples), std::move(envelope),
           std::move(cv) };
}

geometry::ConvexEnvelope fit_convex(const smoothing::Dataset& data, const PipelineConfig& config)
{
  return fit_convex_detailed(data, config).envelope;
}

} // namespace convexreg::pipeline
