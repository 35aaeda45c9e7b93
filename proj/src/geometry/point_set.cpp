#include "convexreg/geometry/point_set.hpp"

#include <cmath>
#include <string>

#include "convexreg/error.hpp"

namespace convexreg::geometry {

PointSet::PointSet(std::size_t dim)
  : dim_(dim)
{
  if (dim == 0) {
    fail(ErrorKind::invalid_input, "point dimension must be positive");
  }
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
  : dim_(dim)
  , coords_(std::move(coords))
{
  if (dim == 0 || coords_.size() % dim != 0) {
    fail(ErrorKind::invalid_input,
         "coordinate count " + std::to_string(coords_.size()) +
           " is not a multiple of dimension " + std::to_string(dim));
  }
}

PointSet::PointSet(std::size_t dim, std::initializer_list<double> coords)
  : PointSet(dim, std::vector<double>(coords))
{}

void PointSet::push_back(std::span<const double> point)
{
  if (point.size() != dim_) {
    fail(ErrorKind::invalid_input, "point has dimension " + std::to_string(point.size()) +
                                     ", expected " + std::to_string(dim_));
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
}

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

} // namespace convexreg::geometry
