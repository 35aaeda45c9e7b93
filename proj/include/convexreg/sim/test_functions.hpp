#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convexreg/geometry/domain.hpp"

namespace convexreg::sim {

double f1(double x); // exp(3(x - 1))
double f2(double x); // (16/9)(x - 1/4)^2
double f3(double x); // -4x + 1 | 0 | 4x - 3, breaks at 1/4 and 3/4
double f2d(double x1, double x2); // max{2 x1^2 + x2^2 / 2, 3 x1 + x2}

// Convex regression function with its default box and a Lipschitz bound.
class TestFunction
{
public:
  static TestFunction named(std::string_view name); // f1 | f2 | f3 | f2d
  static std::vector<std::string> names();

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const geometry::PolyhedralDomain& default_domain() const noexcept { return domain_; }
  double lipschitz() const { return lipschitz_on(domain_); }
  // Analytic bound valid on the given domain; every derivative norm used
  // below is convex, so checking the domain's vertices suffices.
  double lipschitz_on(const geometry::PolyhedralDomain& domain) const;

  double operator()(std::span<const double> x) const;

private:
  std::string name_;
  std::size_t dim_ = 1;
  geometry::PolyhedralDomain domain_;
};

} // namespace convexreg::sim
