#include "convexreg/smoothing/smoother.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "convexreg/error.hpp"

namespace convexreg::smoothing {

namespace {

constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();

// Reciprocal condition estimate below which the local system counts as
// singular.
constexpr double kSingularRcond = 1e-10;

[[noreturn]] void empty_window(std::span<const double> x, double h)
{
  std::string where = "(";
  for (std::size_t k = 0; k < x.size(); ++k) {
    where += (k ? ", " : "") + std::to_string(x[k]);
  }
  fail(ErrorKind::empty_window,
       "no observation within the window at x = " + where + "), h = " + std::to_string(h));
}

double scaled_r2(std::span<const double> xi, std::span<const double> x, double h,
                 std::vector<double>* u)
{
  double r2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double c = (xi[k] - x[k]) / h;
    if (u) {
      (*u)[k] = c;
    }
    r2 += c * c;
  }
  return r2;
}

std::size_t basis_size(std::size_t d, int degree)
{
  std::size_t p = 1 + d;
  if (degree == 2) {
    p += d * (d + 1) / 2;
  }
  return p;
}

void fill_basis(std::span<const double> u, int degree, Eigen::VectorXd& b)
{
  const std::size_t d = u.size();
  Eigen::Index j = 0;
  b(j++) = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    b(j++) = u[k];
  }
  if (degree == 2) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = k; l < d; ++l) {
        b(j++) = u[k] * u[l];
      }
    }
  }
}

} // namespace

std::string_view to_string(SmootherKind kind)
{
  switch (kind) {
  case SmootherKind::nadaraya_watson: return "nw";
  case SmootherKind::local_poly: return "localpoly";
  case SmootherKind::moving_window: return "window";
  }
  return "localpoly";
}

SmootherKind smoother_kind_from_name(std::string_view name)
{
  if (name == "nw" || name == "nadaraya-watson") {
    return SmootherKind::nadaraya_watson;
  }
  if (name == "localpoly" || name == "local-poly") {
    return SmootherKind::local_poly;
  }
  if (name == "window" || name == "moving-window") {
    return SmootherKind::moving_window;
  }
  fail(ErrorKind::invalid_input,
       "unknown smoother '" + std::string(name) + "' (expected nw, localpoly or window)");
}

SmootherFit::SmootherFit(std::shared_ptr<const Dataset> data, SmootherSettings settings,
                         double bandwidth)
  : data_(std::move(data))
  , settings_(std::move(settings))
  , h_(bandwidth)
{
  if (!data_) {
    fail(ErrorKind::invalid_input, "smoother needs a dataset");
  }
  data_->validate();
  if (!(h_ > 0.0) || !std::isfinite(h_)) {
    fail(ErrorKind::invalid_input, "bandwidth must be positive and finite");
  }
  if (settings_.kind == SmootherKind::local_poly &&
      settings_.degree != 1 && settings_.degree != 2) {
    fail(ErrorKind::invalid_input,
         "local polynomial degree must be 1 or 2, got " + std::to_string(settings_.degree));
  }
}

PointEstimate SmootherFit::evaluate(std::span<const double> x) const
{
  return estimate(x, kNoSkip);
}

PointEstimate SmootherFit::evaluate_excluding(std::span<const double> x, std::size_t skip) const
{
  if (skip >= data_->size()) {
    fail(ErrorKind::invalid_input, "leave-one-out index out of range");
  }
  return estimate(x, skip);
}

PointEstimate SmootherFit::estimate(std::span<const double> x, std::size_t skip) const
{
  const Dataset& data = *data_;
  const std::size_t d = data.dim();
  if (x.size() != d) {
    fail(ErrorKind::invalid_input, "evaluation point has the wrong dimension");
  }
  const std::size_t n = data.size();

  if (settings_.kind == SmootherKind::moving_window) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == skip) {
        continue;
      }
      double r2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double c = data.xs[i][k] - x[k];
        r2 += c * c;
      }
      if (std::sqrt(r2) <= h_) {
        sum += data.ys[i];
        ++count;
      }
    }
    if (count == 0) {
      empty_window(x, h_);
    }
    return { sum / static_cast<double>(count), false };
  }

  const Kernel& kernel = settings_.kernel;
  if (settings_.kind == SmootherKind::nadaraya_watson) {
    double wsum = 0.0;
    double wy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == skip) {
        continue;
      }
      const double w = kernel.radial(scaled_r2(data.xs[i], x, h_, nullptr), d);
      wsum += w;
      wy += w * data.ys[i];
    }
    if (settings_.form == KernelForm::johnston) {
      const double m = static_cast<double>(skip == kNoSkip ? n : n - 1);
      return { wy / (m * std::pow(h_, static_cast<double>(d))), false };
    }
    if (!(wsum > 0.0)) {
      empty_window(x, h_);
    }
    return { wy / wsum, false };
  }

  // Local polynomial: weighted least squares in the scaled offsets u.
  const int degree = settings_.degree;
  const auto p = static_cast<Eigen::Index>(basis_size(d, degree));
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd b(p);
  std::vector<double> u(d);
  double wsum = 0.0;
  double wy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip) {
      continue;
    }
    const double w = kernel.radial(scaled_r2(data.xs[i], x, h_, &u), d);
    if (w == 0.0) {
      continue;
    }
    fill_basis(u, degree, b);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(b, w);
    rhs += (w * data.ys[i]) * b;
    wsum += w;
    wy += w * data.ys[i];
  }
  if (!(wsum > 0.0)) {
    empty_window(x, h_);
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram.selfadjointView<Eigen::Lower>());
  // rcond() alone misses exactly zero pivots, which LDLT solves as a pseudo-inverse.
  const auto pivots = ldlt.vectorD().cwiseAbs();
  const bool well_posed = pivots.minCoeff() > kSingularRcond * pivots.maxCoeff();
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() && well_posed &&
      ldlt.rcond() > kSingularRcond) {
    const Eigen::VectorXd beta = ldlt.solve(rhs);
    if (std::isfinite(beta(0))) {
      return { beta(0), false };
    }
  }
  return { wy / wsum, true };
}

SmootherFit fit_smoother(std::shared_ptr<const Dataset> data, const SmootherSettings& settings,
                         double h)
{
  return SmootherFit(std::move(data), settings, h);
}

SmootherFit fit_nadaraya_watson(const Dataset& data, const Kernel& kernel, double h,
                                KernelForm form)
{
  return SmootherFit(std::make_shared<const Dataset>(data),
                     { SmootherKind::nadaraya_watson, kernel, 0, form }, h);
}

SmootherFit fit_local_poly(const Dataset& data, const Kernel& kernel, double h, int degree)
{
  return SmootherFit(std::make_shared<const Dataset>(data),
                     { SmootherKind::local_poly, kernel, degree, KernelForm::ratio }, h);
}

SmootherFit fit_moving_window(const Dataset& data, double h)
{
  return SmootherFit(std::make_shared<const Dataset>(data),
                     { SmootherKind::moving_window, Kernel(KernelType::uniform_ball), 0,
                       KernelForm::ratio },
                     h);
}

} // namespace convexreg::smoothing
