#include "convexreg/smoothing/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "convexreg/error.hpp"

namespace convexreg::smoothing {

double unit_ball_volume(std::size_t dim) noexcept
{
  const double d = static_cast<double>(dim);
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

Kernel Kernel::from_name(std::string_view name)
{
  if (name == "gaussian") {
    return Kernel(KernelType::gaussian);
  }
  if (name == "epanechnikov") {
    return Kernel(KernelType::epanechnikov);
  }
  if (name == "uniform-ball") {
    return Kernel(KernelType::uniform_ball);
  }
  fail(ErrorKind::invalid_input, "unknown kernel '" + std::string(name) +
                                   "' (expected gaussian, epanechnikov or uniform-ball)");
}

std::string_view Kernel::name() const noexcept
{
  switch (type_) {
  case KernelType::gaussian: return "gaussian";
  case KernelType::epanechnikov: return "epanechnikov";
  case KernelType::uniform_ball: return "uniform-ball";
  }
  return "gaussian";
}

double Kernel::support_radius() const noexcept
{
  return compact() ? 1.0 : std::numeric_limits<double>::infinity();
}

double Kernel::radial(double r2, std::size_t dim) const noexcept
{
  const double d = static_cast<double>(dim);
  switch (type_) {
  case KernelType::gaussian:
    return std::exp(-0.5 * r2) / std::pow(2.0 * std::numbers::pi, d / 2.0);
  case KernelType::epanechnikov:
    return r2 < 1.0 ? (d + 2.0) / (2.0 * unit_ball_volume(dim)) * (1.0 - r2) : 0.0;
  case KernelType::uniform_ball:
    return r2 <= 1.0 ? 1.0 / unit_ball_volume(dim) : 0.0;
  }
  return 0.0;
}

double Kernel::operator()(std::span<const double> u) const noexcept
{
  double r2 = 0.0;
  for (const double c : u) {
    r2 += c * c;
  }
  return radial(r2, u.size());
}

double Kernel::squared_integral(std::size_t dim) const noexcept
{
  const double d = static_cast<double>(dim);
  const double vol = unit_ball_volume(dim);
  switch (type_) {
  case KernelType::gaussian:
    return std::pow(4.0 * std::numbers::pi, -d / 2.0);
  case KernelType::epanechnikov: {
    const double c = (d + 2.0) / (2.0 * vol);
    // surface area d*V_d times the radial integral of (1 - r^2)^2 r^(d-1)
    return c * c * d * vol * (1.0 / d - 2.0 / (d + 2.0) + 1.0 / (d + 4.0));
  }
  case KernelType::uniform_ball:
    return 1.0 / vol;
  }
  return 0.0;
}

} // namespace convexreg::smoothing
