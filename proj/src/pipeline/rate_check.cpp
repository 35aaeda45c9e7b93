#include "convexreg/pipeline/rate_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "convexreg/error.hpp"
#include "convexreg/geometry/envelope.hpp"
#include "convexreg/geometry/grid.hpp"
#include "convexreg/parallel.hpp"
#include "convexreg/random.hpp"
#include "convexreg/smoothing/bandwidth.hpp"
#include "convexreg/smoothing/sampling.hpp"

namespace convexreg::pipeline {

std::size_t per_axis_for_mesh(const geometry::PolyhedralDomain& box, double delta)
{
  const std::size_t d = box.dim();
  double widest = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    widest = std::max(widest, box.upper()[k] - box.lower()[k]);
  }
  const double cells = std::ceil(widest * std::sqrt(static_cast<double>(d)) / delta);
  auto m = static_cast<std::size_t>(std::max(1.0, cells)) + 1;
  // Guard against the ceiling landing one cell short after rounding.
  while (widest / static_cast<double>(m - 1) * std::sqrt(static_cast<double>(d)) > delta) {
    ++m;
  }
  return m;
}

RateCheckResult empirical_rate_check(const RateCheckConfig& config)
{
  if (!config.domain.is_box()) {
    fail(ErrorKind::invalid_input, "rate check needs a box domain");
  }
  if (config.replications < 10) {
    fail(ErrorKind::invalid_input, "rate check needs at least 10 replications");
  }
  if (config.n_list.empty() ||
      !std::is_sorted(config.n_list.begin(), config.n_list.end(), std::less_equal<>())) {
    fail(ErrorKind::invalid_input, "rate check needs a strictly increasing list of sample sizes");
  }
  if (!(config.sigma >= 0.0)) {
    fail(ErrorKind::invalid_input, "noise level must be non-negative");
  }

  const auto& domain = config.domain;
  const std::size_t d = domain.dim();
  const geometry::PointSet test = dense_test_grid(domain);
  std::vector<double> f_test(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    f_test[i] = config.f_true(test[i]);
  }

  RateCheckResult result;
  for (const std::size_t n : config.n_list) {
    RateRow row;
    row.n = n;
    row.bandwidth = smoothing::tran_bandwidth(static_cast<double>(n), d);
    row.delta = row.bandwidth / std::log(static_cast<double>(n));
    row.per_axis = per_axis_for_mesh(domain, row.delta);
    const geometry::Grid grid = geometry::uniform_grid(domain, row.per_axis);
    row.mesh = grid.mesh();

    std::vector<double> errors(config.replications);
    parallel_for(config.replications, [&](std::size_t r) {
      auto engine = stream_engine(config.seed ^ (std::uint64_t{ n } << 32), r);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      std::normal_distribution<double> noise(0.0, 1.0);
      smoothing::Dataset data{ geometry::PointSet(d), {}, domain };
      data.xs.reserve(n);
      std::vector<double> x(d);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
          x[k] = domain.lower()[k] + unif(engine) * (domain.upper()[k] - domain.lower()[k]);
        }
        data.xs.push_back(x);
        data.ys.push_back(config.f_true(x) + config.sigma * noise(engine));
      }
      const auto fit = smoothing::fit_moving_window(data, row.bandwidth);
      const auto samples = smoothing::sample_on_grid_serial(fit, grid);
      geometry::HullOptions options;
      options.domain = domain;
      const auto env = geometry::lower_hull(samples.points, samples.values, options);
      double sup = 0.0;
      for (std::size_t i = 0; i < test.size(); ++i) {
        sup = std::max(sup, std::abs(env.evaluate(test[i], true) - f_test[i]));
      }
      errors[r] = sup;
    });
    double sum = 0.0;
    for (const double e : errors) {
      sum += e;
    }
    row.mean_sup_error = sum / static_cast<double>(errors.size());
    result.rows.push_back(row);
  }

  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    if (result.rows[k].mean_sup_error < result.rows[k - 1].mean_sup_error) {
      ++result.decreases;
    }
  }
  if (result.rows.size() > 1) {
    result.decrease_fraction =
      static_cast<double>(result.decreases) / static_cast<double>(result.rows.size() - 1);
  }
  return result;
}

} // namespace convexreg::pipeline
