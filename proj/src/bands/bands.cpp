#include "convexreg/bands/bands.hpp"

#include <cmath>
#include <string>

#include "convexreg/error.hpp"
#include "convexreg/geometry/grid.hpp"
#include "convexreg/smoothing/sampling.hpp"
#include "convexreg/smoothing/smoother.hpp"

namespace convexreg::bands {

namespace {

void validate(const smoothing::Dataset& data, const BandConfig& config)
{
  data.validate();
  if (data.dim() != 1) {
    fail(ErrorKind::unsupported_dimension,
         "confidence bands are only available for 1-d data, got d = " +
           std::to_string(data.dim()));
  }
  if (!(config.delta_exponent > 0.2 && config.delta_exponent < 1.0 / 3.0)) {
    fail(ErrorKind::invalid_input, "delta exponent must lie strictly between 1/5 and 1/3");
  }
  if (!config.kernel.compact()) {
    fail(ErrorKind::invalid_input, "confidence bands need a compactly supported kernel");
  }
  if (!(config.bandwidth_constant > 0.0) || !std::isfinite(config.drift_correction)) {
    fail(ErrorKind::invalid_input, "invalid bandwidth constant or drift correction");
  }
  if (data.size() < 2) {
    fail(ErrorKind::invalid_input, "confidence bands need at least 2 observations");
  }
}

} // namespace

double critical_constant(double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0)) {
    fail(ErrorKind::invalid_input, "alpha must lie in (0, 1)");
  }
  return std::log(2.0) - std::log(std::abs(std::log1p(-alpha)));
}

double drift_constant(double n, double delta_exponent, double kappa)
{
  if (!(n >= 2.0)) {
    fail(ErrorKind::invalid_input, "drift constant needs n >= 2");
  }
  if (!(delta_exponent > 0.0)) {
    fail(ErrorKind::invalid_input, "delta exponent must be positive");
  }
  const double s = std::sqrt(2.0 * delta_exponent * std::log(n));
  return s + kappa / s;
}

double band_halfwidth(const BandConstants& c, double second_moment)
{
  const double r_n =
    std::sqrt(c.kernel_sq_integral * second_moment / (c.n * c.bandwidth));
  return r_n * (c.d_n + c.c_alpha / std::sqrt(2.0 * c.delta_exponent * std::log(c.n)));
}

double BandEstimate::width() const
{
  if (halfwidths.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const double h : halfwidths) {
    sum += h;
  }
  return 2.0 * sum / static_cast<double>(halfwidths.size());
}

BandEstimate confidence_band(const smoothing::Dataset& data, const BandConfig& config,
                             std::span<const double> eval_xs)
{
  validate(data, config);
  const double n = static_cast<double>(data.size());

  BandEstimate band;
  auto& c = band.constants;
  c.alpha = config.alpha;
  c.c_alpha = critical_constant(config.alpha);
  c.delta_exponent = config.delta_exponent;
  c.drift_correction = config.drift_correction;
  c.d_n = drift_constant(n, config.delta_exponent, config.drift_correction);
  c.n = n;
  c.bandwidth = config.bandwidth_constant * std::pow(n, -config.delta_exponent);
  c.kernel_sq_integral = config.kernel.squared_integral(1);
  c.support_radius = config.kernel.support_radius();
  c.kernel = std::string(config.kernel.name());
  c.second_moment_method = config.second_moment ? "supplied" : "plug-in";

  const auto domain = data.domain_or_bounding_box();
  const double lo = domain.lower()[0];
  const double hi = domain.upper()[0];

  const auto center_fit =
    smoothing::fit_nadaraya_watson(data, config.kernel, c.bandwidth, smoothing::KernelForm::johnston);
  smoothing::Dataset squares = data;
  for (auto& y : squares.ys) {
    y *= y;
  }
  const auto moment_fit =
    smoothing::fit_nadaraya_watson(squares, config.kernel, c.bandwidth, smoothing::KernelForm::ratio);

  const double edge = c.support_radius * c.bandwidth;
  for (const double x : eval_xs) {
    const double point[1] = { x };
    const double m2 = config.second_moment ? config.second_moment(x) : moment_fit(point);
    if (!(m2 >= 0.0) || !std::isfinite(m2)) {
      fail(ErrorKind::invalid_input, "second-moment estimate is negative or non-finite at x = " +
                                       std::to_string(x));
    }
    band.xs.push_back(x);
    band.centers.push_back(center_fit(point));
    band.second_moments.push_back(m2);
    band.halfwidths.push_back(band_halfwidth(c, m2));
    band.unreliable.push_back(x - lo <= edge || hi - x <= edge);
  }
  return band;
}

BandEstimate recenter(const BandEstimate& band, const geometry::ConvexEnvelope& envelope)
{
  BandEstimate out = band;
  for (std::size_t i = 0; i < out.xs.size(); ++i) {
    const double point[1] = { out.xs[i] };
    out.centers[i] = envelope.evaluate(point, true);
  }
  return out;
}

BandEstimate convexified_band(const smoothing::Dataset& data, const BandConfig& config,
                              std::span<const double> eval_xs, std::size_t grid_points)
{
  const BandEstimate raw = confidence_band(data, config, eval_xs);
  const auto center_fit = smoothing::fit_nadaraya_watson(data, config.kernel, raw.constants.bandwidth,
                                                         smoothing::KernelForm::johnston);
  const auto domain = data.domain_or_bounding_box();
  double lo = domain.lower()[0];
  double hi = domain.upper()[0];
  const double edge = raw.constants.support_radius * raw.constants.bandwidth;
  if (config.trim_edges && hi - lo > 2.0 * edge) {
    lo += edge;
    hi -= edge;
  }
  const auto grid = geometry::uniform_grid(geometry::make_box_domain({ lo }, { hi }), grid_points);
  const auto samples = smoothing::sample_on_grid_serial(center_fit, grid);
  geometry::HullOptions options;
  options.domain = grid.domain();
  return recenter(raw, geometry::lower_hull(samples.points, samples.values, options));
}

} // namespace convexreg::bands
