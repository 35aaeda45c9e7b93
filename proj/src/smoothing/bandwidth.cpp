#include "convexreg/smoothing/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

#include "convexreg/error.hpp"
#include "convexreg/parallel.hpp"

namespace convexreg::smoothing {

namespace {

constexpr double kMaxFailureFraction = 0.2;

// Squared LOO residual of observation i, or NaN when the fit fails.
double loo_residual2(const SmootherFit& fit, std::size_t i)
{
  const Dataset& data = fit.data();
  try {
    const PointEstimate e = fit.evaluate_excluding(data.xs[i], i);
    if (e.fallback) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    const double r = data.ys[i] - e.value;
    return r * r;
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::empty_window) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    throw;
  }
}

void validate_cv_inputs(const Dataset& data, std::span<const double> candidates)
{
  if (candidates.empty()) {
    fail(ErrorKind::bandwidth_selection, "no bandwidth candidates given");
  }
  data.validate();
  if (data.size() < 3) {
    fail(ErrorKind::bandwidth_selection, "cross-validation needs at least 3 observations");
  }
  for (const double h : candidates) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      fail(ErrorKind::bandwidth_selection, "bandwidth candidates must be positive and finite");
    }
  }
}

// Folds residual tables (row per candidate) into scores, serially in
// observation order, and picks the winner.
CvResult summarize(std::span<const double> candidates, const std::vector<double>& residuals,
                   std::size_t n)
{
  CvResult out;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    CandidateScore s;
    s.bandwidth = candidates[c];
    double sum = 0.0;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r2 = residuals[c * n + i];
      if (std::isnan(r2)) {
        ++s.failures;
      } else {
        sum += r2;
        ++ok;
      }
    }
    s.qualified = ok > 0 &&
                  static_cast<double>(s.failures) <= kMaxFailureFraction * static_cast<double>(n);
    s.score = s.qualified ? sum / static_cast<double>(ok) : std::numeric_limits<double>::quiet_NaN();
    out.scores.push_back(s);
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return candidates[a] < candidates[b]; });
  const CandidateScore* best = nullptr;
  for (const auto c : order) {
    const auto& s = out.scores[c];
    if (!s.qualified) {
      continue;
    }
    if (!best || (s.score < best->score && !cv_scores_tie(s.score, best->score))) {
      best = &s;
    }
  }
  if (!best) {
    fail(ErrorKind::bandwidth_selection,
         "every bandwidth candidate failed more than 20% of leave-one-out fits");
  }
  out.bandwidth = best->bandwidth;
  return out;
}

} // namespace

bool cv_scores_tie(double a, double b)
{
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)) + 1e-24;
}

double tran_bandwidth(double n, std::size_t dim, double constant)
{
  if (!(n >= 2.0)) {
    fail(ErrorKind::invalid_input, "Tran bandwidth needs n >= 2");
  }
  if (dim == 0 || !(constant > 0.0)) {
    fail(ErrorKind::invalid_input, "Tran bandwidth needs d >= 1 and a positive constant");
  }
  return constant * std::pow(std::log(n) / n, 1.0 / (static_cast<double>(dim) + 2.0));
}

std::vector<double> default_bandwidth_candidates(const Dataset& data, std::size_t count)
{
  data.validate();
  const std::size_t n = data.size();
  const double diameter = data.domain_or_bounding_box().diameter();
  double nn_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        best = std::min(best, geometry::distance(data.xs[i], data.xs[j]));
      }
    }
    nn_sum += std::isfinite(best) ? best : 0.0;
  }
  double lo = 0.5 * nn_sum / static_cast<double>(n);
  if (!(lo > 0.0) || lo >= diameter) {
    lo = 1e-3 * diameter;
  }
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = count == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    out[k] = lo * std::pow(diameter / lo, t);
  }
  out.back() = diameter;
  return out;
}

CvResult cross_validate_bandwidth(const Dataset& data, const SmootherSettings& settings,
                                  std::span<const double> candidates)
{
  validate_cv_inputs(data, candidates);
  const auto shared = std::make_shared<const Dataset>(data);
  const std::size_t n = data.size();
  std::vector<SmootherFit> fits;
  fits.reserve(candidates.size());
  for (const double h : candidates) {
    fits.emplace_back(shared, settings, h);
  }
  std::vector<double> residuals(candidates.size() * n);
  parallel_for(residuals.size(), [&](std::size_t k) {
    residuals[k] = loo_residual2(fits[k / n], k % n);
  });
  return summarize(candidates, residuals, n);
}

CvResult cross_validate_bandwidth_serial(const Dataset& data, const SmootherSettings& settings,
                                         std::span<const double> candidates)
{
  validate_cv_inputs(data, candidates);
  const auto shared = std::make_shared<const Dataset>(data);
  const std::size_t n = data.size();
  std::vector<double> residuals;
  residuals.reserve(candidates.size() * n);
  for (const double h : candidates) {
    const SmootherFit fit(shared, settings, h);
    for (std::size_t i = 0; i < n; ++i) {
      residuals.push_back(loo_residual2(fit, i));
    }
  }
  return summarize(candidates, residuals, n);
}

double cross_validate_bandwidth(const Dataset& data, const Kernel& kernel, int degree,
                                std::span<const double> candidates)
{
  const SmootherSettings settings{ SmootherKind::local_poly, kernel, degree, KernelForm::ratio };
  return cross_validate_bandwidth(data, settings, candidates).bandwidth;
}

} // namespace convexreg::smoothing
