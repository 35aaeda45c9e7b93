#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace convexreg::smoothing {

enum class KernelType { gaussian, epanechnikov, uniform_ball };

// Radially symmetric kernel K(u) = c_d k(|u|^2), normalized to integrate to
// one over R^d. In 1-d: gaussian is the standard normal density,
// epanechnikov is 3/4 (1 - u^2)_+, uniform-ball is 1/2 on |u| <= 1. The
// d-dimensional gaussian equals the product kernel.
class Kernel
{
public:
  Kernel() = default;
  explicit Kernel(KernelType type)
    : type_(type)
  {}

  // "gaussian" | "epanechnikov" | "uniform-ball"; throws invalid_input.
  static Kernel from_name(std::string_view name);

  KernelType type() const noexcept { return type_; }
  std::string_view name() const noexcept;

  bool compact() const noexcept { return type_ != KernelType::gaussian; }
  // A: K vanishes for |u| > A (infinite for the gaussian).
  double support_radius() const noexcept;

  double radial(double r2, std::size_t dim) const noexcept;
  double operator()(std::span<const double> u) const noexcept;

  // Integral of K^2 over R^dim.
  double squared_integral(std::size_t dim = 1) const noexcept;

  friend bool operator==(const Kernel&, const Kernel&) = default;

private:
  KernelType type_ = KernelType::gaussian;
};

// Volume of the unit ball in R^dim.
double unit_ball_volume(std::size_t dim) noexcept;

} // namespace convexreg::smoothing
