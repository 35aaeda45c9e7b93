#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "convexreg/geometry/envelope.hpp"
#include "convexreg/smoothing/dataset.hpp"
#include "convexreg/smoothing/kernel.hpp"

namespace convexreg::bands {

// c(alpha) = log 2 - log|log(1 - alpha)|, alpha in (0, 1).
double critical_constant(double alpha);

// sqrt(2 delta log n) + kappa / sqrt(2 delta log n). kappa = 0 keeps only the
// leading term.
double drift_constant(double n, double delta_exponent, double kappa = 0.0);

struct BandConfig
{
  double alpha = 0.05;
  double delta_exponent = 0.3;  // h_n = bandwidth_constant * n^(-delta), delta in (1/5, 1/3)
  double bandwidth_constant = 1.0;
  double drift_correction = 0.0; // kappa in drift_constant
  smoothing::Kernel kernel{ smoothing::KernelType::epanechnikov }; // must be compact
  // E[Y^2 | X = x]; when empty, a ratio-form kernel estimate of y^2 with the
  // same kernel and bandwidth is used.
  std::function<double(double)> second_moment;
  // Convexify only the part of the estimate farther than A h_n from the
  // endpoints and extend its pieces outward; the truncated kernel mass at
  // the ends otherwise drags the hull far below the interior estimate.
  bool trim_edges = true;
};

struct BandConstants
{
  double alpha = 0.0;
  double c_alpha = 0.0;
  double delta_exponent = 0.0;
  double drift_correction = 0.0;
  double d_n = 0.0;
  double n = 0.0;
  double bandwidth = 0.0;
  double kernel_sq_integral = 0.0;
  double support_radius = 0.0;
  std::string kernel;
  std::string second_moment_method; // "plug-in" or "supplied"
};

// halfwidth = r_n(x) (d_n + c(alpha) / sqrt(2 delta log n)),
// r_n(x)^2 = int K^2 * second_moment / (n h_n).
double band_halfwidth(const BandConstants& constants, double second_moment);

struct BandEstimate
{
  std::vector<double> xs;
  std::vector<double> centers;
  std::vector<double> halfwidths;
  std::vector<double> second_moments;
  std::vector<bool> unreliable; // within A h_n of an endpoint
  BandConstants constants;

  std::size_t size() const noexcept { return xs.size(); }
  double lower(std::size_t i) const { return centers[i] - halfwidths[i]; }
  double upper(std::size_t i) const { return centers[i] + halfwidths[i]; }
  // Twice the mean halfwidth.
  double width() const;
};

// Band around the unnormalized (Johnston) kernel estimate. The data must be
// 1-d; the endpoints are those of the data's domain (or bounding box).
BandEstimate confidence_band(const smoothing::Dataset& data, const BandConfig& config,
                             std::span<const double> eval_xs);

// Same halfwidths around the convexified Johnston estimate: the estimate is
// sampled on a uniform grid of grid_points (over the reliable interior when
// trim_edges is set, else the whole domain) and replaced by its lower convex
// hull, evaluated with extension.
BandEstimate convexified_band(const smoothing::Dataset& data, const BandConfig& config,
                              std::span<const double> eval_xs, std::size_t grid_points = 101);

// Moves an existing band onto new centers, keeping the halfwidths.
BandEstimate recenter(const BandEstimate& band, const geometry::ConvexEnvelope& envelope);

} // namespace convexreg::bands
