#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace convexreg::geometry {

// Flat row-major storage of points in R^dim.
class PointSet
{
public:
  PointSet() = default;
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<double> coords);
  PointSet(std::size_t dim, std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept
  {
    return { coords_.data() + i * dim_, dim_ };
  }

  void push_back(std::span<const double> point);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

double dot(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

} // namespace convexreg::geometry
