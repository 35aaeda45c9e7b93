#include "convexreg/pipeline/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "convexreg/error.hpp"
#include "convexreg/parallel.hpp"

namespace convexreg::pipeline {

namespace {

double axis_coordinate(const geometry::PolyhedralDomain& domain, std::size_t k, std::size_t i,
                       std::size_t m)
{
  if (i + 1 == m) {
    return domain.upper()[k];
  }
  const double t = static_cast<double>(i) / static_cast<double>(m - 1);
  return domain.lower()[k] + t * (domain.upper()[k] - domain.lower()[k]);
}

} // namespace

std::size_t dense_points_per_axis(std::size_t dim)
{
  return dim == 1 ? 1001 : 101;
}

geometry::PointSet dense_test_grid(const geometry::PolyhedralDomain& domain)
{
  const std::size_t d = domain.dim();
  const std::size_t m = dense_points_per_axis(d);
  geometry::PointSet out(d);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(d);
  while (true) {
    for (std::size_t k = 0; k < d; ++k) {
      p[k] = axis_coordinate(domain, k, idx[k], m);
    }
    if (domain.contains(p, 0.0)) {
      out.push_back(p);
    }
    std::size_t k = 0;
    while (k < d && ++idx[k] == m) {
      idx[k] = 0;
      ++k;
    }
    if (k == d) {
      break;
    }
  }
  return out;
}

double estimate_lipschitz(const RealFunction& f, const geometry::PolyhedralDomain& domain)
{
  const std::size_t d = domain.dim();
  const std::size_t m = dense_points_per_axis(d);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(d);
  std::vector<double> q(d);
  double best = 0.0;
  while (true) {
    for (std::size_t k = 0; k < d; ++k) {
      p[k] = axis_coordinate(domain, k, idx[k], m);
    }
    bool complete = domain.contains(p, 0.0);
    double g2 = 0.0;
    const double fp = complete ? f(p) : 0.0;
    for (std::size_t k = 0; k < d && complete; ++k) {
      if (idx[k] + 1 == m) {
        complete = false;
        break;
      }
      q = p;
      q[k] = axis_coordinate(domain, k, idx[k] + 1, m);
      if (!domain.contains(q, 0.0)) {
        complete = false;
        break;
      }
      const double slope = (f(q) - fp) / (q[k] - p[k]);
      g2 += slope * slope;
    }
    if (complete) {
      best = std::max(best, std::sqrt(g2));
    }
    std::size_t k = 0;
    while (k < d && ++idx[k] == m) {
      idx[k] = 0;
      ++k;
    }
    if (k == d) {
      break;
    }
  }
  return best;
}

DiagnosticsReport check_theorem1(const RealFunction& f_true, const ConvexFit& fit,
                                 std::optional<double> lipschitz, double tolerance)
{
  // The fit works on negated responses for concave shapes; compare in that
  // frame and mirror the bounds back at the end.
  const bool concave = fit.envelope.shape() == geometry::Shape::concave;
  const double sign = concave ? -1.0 : 1.0;
  const auto& domain = fit.grid.domain();

  DiagnosticsReport r;
  r.tolerance = tolerance;
  r.delta_n = fit.grid.mesh();
  if (lipschitz) {
    r.lipschitz_L = *lipschitz;
  } else {
    r.lipschitz_L = estimate_lipschitz(f_true, domain);
    r.lipschitz_estimated = true;
  }

  const auto& samples = fit.samples;
  for (std::size_t i = 0; i < samples.values.size(); ++i) {
    r.eps_n = std::max(r.eps_n, std::abs(samples.values[i] - sign * f_true(samples.points[i])));
  }

  const geometry::PointSet test = dense_test_grid(domain);
  r.test_points = test.size();
  const std::size_t n = test.size();
  std::vector<double> diff(n);
  std::vector<double> smoother_err(n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(n, [&](std::size_t i) {
    const double f = f_true(test[i]);
    diff[i] = fit.envelope.evaluate(test[i], true) - f;
    try {
      smoother_err[i] = std::abs(sign * fit.smoother.evaluate(test[i]).value - f);
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::smoothing) {
        throw;
      }
    }
  });
  r.observed_min = std::numeric_limits<double>::infinity();
  r.observed_max = -std::numeric_limits<double>::infinity();
  r.smoother_sup_error = r.eps_n;
  for (std::size_t i = 0; i < n; ++i) {
    r.observed_min = std::min(r.observed_min, diff[i]);
    r.observed_max = std::max(r.observed_max, diff[i]);
    r.envelope_sup_error = std::max(r.envelope_sup_error, std::abs(diff[i]));
    if (std::isnan(smoother_err[i])) {
      ++r.smoother_failures;
    } else {
      r.smoother_sup_error = std::max(r.smoother_sup_error, smoother_err[i]);
    }
  }

  const double slack = r.lipschitz_L * r.delta_n;
  if (concave) {
    r.bound_lo = -(r.eps_n + slack);
    r.bound_hi = r.eps_n;
  } else {
    r.bound_lo = -r.eps_n;
    r.bound_hi = r.eps_n + slack;
  }
  return r;
}

} // namespace convexreg::pipeline
