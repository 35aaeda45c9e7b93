#include "convexreg/smoothing/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convexreg/error.hpp"

namespace convexreg::smoothing {

void Dataset::validate() const
{
  if (ys.empty()) {
    fail(ErrorKind::invalid_input, "dataset is empty");
  }
  if (xs.size() != ys.size()) {
    fail(ErrorKind::invalid_input, "dataset has " + std::to_string(xs.size()) + " points but " +
                                     std::to_string(ys.size()) + " responses");
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!std::isfinite(ys[i])) {
      fail(ErrorKind::invalid_input, "non-finite response at observation " + std::to_string(i));
    }
    for (const double c : xs[i]) {
      if (!std::isfinite(c)) {
        fail(ErrorKind::invalid_input, "non-finite coordinate at observation " + std::to_string(i));
      }
    }
  }
  if (domain && domain->dim() != xs.dim()) {
    fail(ErrorKind::invalid_input, "dataset domain dimension does not match the points");
  }
}

geometry::PolyhedralDomain Dataset::domain_or_bounding_box() const
{
  if (domain) {
    return *domain;
  }
  const std::size_t d = dim();
  std::vector<double> lo(d, INFINITY);
  std::vector<double> hi(d, -INFINITY);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], xs[i][k]);
      hi[k] = std::max(hi[k], xs[i][k]);
    }
  }
  return geometry::make_box_domain(lo, hi);
}

Dataset make_dataset(geometry::PointSet xs, std::vector<double> ys,
                     std::optional<geometry::PolyhedralDomain> domain)
{
  Dataset data{ std::move(xs), std::move(ys), std::move(domain) };
  data.validate();
  return data;
}

} // namespace convexreg::smoothing
