#include "convexreg/sim/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convexreg/error.hpp"
#include "convexreg/parallel.hpp"
#include "convexreg/pipeline/diagnostics.hpp"

namespace convexreg::sim {

namespace {

constexpr std::size_t kBlock = 128;

struct Replicate
{
  std::vector<double> estimate;
  std::vector<double> smoother;
};

Replicate run_replication(const SimSpec& spec, const pipeline::PipelineConfig& config,
                          const geometry::PointSet& eval, const MomentOptions& options,
                          std::size_t r)
{
  try {
    const auto data = simulate_dataset(spec, r);
    const auto fit = pipeline::fit_convex_detailed(data, config);
    if (options.on_replication) {
      options.on_replication(r, fit);
    }
    const double sign = fit.envelope.shape() == geometry::Shape::concave ? -1.0 : 1.0;
    Replicate out;
    out.estimate = geometry::evaluate_many_serial(fit.envelope, eval, true);
    if (options.include_smoother) {
      out.smoother.reserve(eval.size());
      for (std::size_t i = 0; i < eval.size(); ++i) {
        out.smoother.push_back(sign * fit.smoother.evaluate(eval[i]).value);
      }
    }
    return out;
  } catch (const Error& e) {
    throw Error(e.kind(), "replication " + std::to_string(r) + ": " + e.what());
  }
}

template <class RunBlock>
MomentStudy study(const SimSpec& spec, const MomentOptions& options, RunBlock&& run_block)
{
  validate(spec);
  if (spec.replications < 2) {
    fail(ErrorKind::invalid_input, "a moment study needs at least 2 replications");
  }
  const auto config = resolved_pipeline(spec);
  const auto eval = pipeline::dense_test_grid(spec.resolved_domain());
  std::vector<double> truth(eval.size());
  for (std::size_t i = 0; i < eval.size(); ++i) {
    truth[i] = spec.function(eval[i]);
  }
  MomentAccumulator est(truth);
  std::optional<MomentAccumulator> smo;
  if (options.include_smoother) {
    smo.emplace(truth);
  }

  std::vector<Replicate> block;
  for (std::size_t start = 0; start < spec.replications; start += kBlock) {
    const std::size_t count = std::min(kBlock, spec.replications - start);
    block.assign(count, {});
    run_block(count, [&](std::size_t j) {
      block[j] = run_replication(spec, config, eval, options, start + j);
    });
    for (const auto& rep : block) {
      est.add(rep.estimate);
      if (smo) {
        smo->add(rep.smoother);
      }
    }
  }

  MomentStudy out;
  out.estimator = est.finish(eval);
  if (smo) {
    out.smoother = smo->finish(eval);
  }
  return out;
}

} // namespace

double MomentSurface::max_decomposition_error() const
{
  double worst = 0.0;
  for (std::size_t i = 0; i < mse.size(); ++i) {
    worst = std::max(worst, std::abs(mse[i] - (variance[i] + bias2[i])));
  }
  return worst;
}

MomentAccumulator::MomentAccumulator(std::vector<double> truth)
  : truth_(std::move(truth))
  , mean_dev_(truth_.size(), 0.0)
  , m2_(truth_.size(), 0.0)
  , sum_sq_(truth_.size(), 0.0)
{}

void MomentAccumulator::add(std::span<const double> estimate)
{
  if (estimate.size() != truth_.size()) {
    fail(ErrorKind::invalid_input, "estimate has the wrong number of points");
  }
  ++count_;
  const double k = static_cast<double>(count_);
  for (std::size_t i = 0; i < truth_.size(); ++i) {
    const double dev = estimate[i] - truth_[i];
    const double delta = dev - mean_dev_[i];
    mean_dev_[i] += delta / k;
    m2_[i] += delta * (dev - mean_dev_[i]);
    sum_sq_[i] += dev * dev;
  }
}

MomentSurface MomentAccumulator::finish(geometry::PointSet points) const
{
  if (count_ == 0) {
    fail(ErrorKind::invalid_input, "no replications accumulated");
  }
  const double r = static_cast<double>(count_);
  MomentSurface s;
  s.points = std::move(points);
  s.truth = truth_;
  s.replications = count_;
  for (std::size_t i = 0; i < truth_.size(); ++i) {
    s.mean.push_back(truth_[i] + mean_dev_[i]);
    s.variance.push_back(std::max(0.0, m2_[i] / r));
    s.bias2.push_back(mean_dev_[i] * mean_dev_[i]);
    s.mse.push_back(sum_sq_[i] / r);
  }
  return s;
}

pipeline::PipelineConfig resolved_pipeline(const SimSpec& spec)
{
  pipeline::PipelineConfig config = spec.pipeline;
  if (!config.grid.domain) {
    config.grid.domain = spec.resolved_domain();
  }
  return config;
}

MomentStudy moment_study(const SimSpec& spec, const MomentOptions& options)
{
  return study(spec, options, [](std::size_t count, auto&& body) { parallel_for(count, body); });
}

MomentStudy moment_study_serial(const SimSpec& spec, const MomentOptions& options)
{
  return study(spec, options, [](std::size_t count, auto&& body) {
    for (std::size_t j = 0; j < count; ++j) {
      body(j);
    }
  });
}

} // namespace convexreg::sim
