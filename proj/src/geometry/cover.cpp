#include "convexreg/geometry/cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "convexreg/error.hpp"

namespace convexreg::geometry {

namespace {

std::vector<CoverTerm> lattice_cover(const Grid& grid, std::span<const double> x)
{
  const auto& lat = *grid.lattice();
  const std::size_t d = x.size();
  const std::size_t m = lat.per_axis;
  std::vector<std::size_t> cell(d);
  std::vector<double> u(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double s = (x[k] - lat.lower[k]) / lat.spacing[k];
    const double c = std::clamp(std::floor(s), 0.0, static_cast<double>(m - 2));
    cell[k] = static_cast<std::size_t>(c);
    const double t = std::clamp(s - c, 0.0, 1.0);
    u[k] = (k % 2 == 1) ? 1.0 - t : t;
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });

  std::vector<CoverTerm> out;
  std::vector<int> corner(d, 0); // corner in mirrored coordinates
  auto emit = [&](double weight) {
    if (weight <= 0.0) {
      return;
    }
    std::size_t index = 0;
    std::size_t stride = 1;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t offset = (k % 2 == 1) ? static_cast<std::size_t>(1 - corner[k])
                                              : static_cast<std::size_t>(corner[k]);
      index += (cell[k] + offset) * stride;
      stride *= m;
    }
    const auto p = grid.points()[index];
    out.push_back({ index, std::vector<double>(p.begin(), p.end()), weight });
  };
  emit(1.0 - u[order[0]]);
  for (std::size_t j = 0; j < d; ++j) {
    corner[order[j]] = 1;
    const double next = (j + 1 < d) ? u[order[j + 1]] : 0.0;
    emit(u[order[j]] - next);
  }
  return out;
}

std::vector<CoverTerm> simplex_cover(const Grid& grid, std::span<const double> x)
{
  const std::size_t d = x.size();
  const auto m = static_cast<Eigen::Index>(d + 1);
  Eigen::VectorXd rhs(m);
  for (std::size_t k = 0; k < d; ++k) {
    rhs(static_cast<Eigen::Index>(k)) = x[k];
  }
  rhs(m - 1) = 1.0;
  for (const auto& simplex : grid.simplices()) {
    Eigen::MatrixXd a(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto p = grid.points()[simplex[static_cast<std::size_t>(c)]];
      for (std::size_t k = 0; k < d; ++k) {
        a(static_cast<Eigen::Index>(k), c) = p[k];
      }
      a(m - 1, c) = 1.0;
    }
    const auto lu = a.fullPivLu();
    if (!lu.isInvertible()) {
      continue;
    }
    Eigen::VectorXd lambda = lu.solve(rhs);
    if (lambda.minCoeff() < -1e-12) {
      continue;
    }
    lambda = lambda.cwiseMax(0.0);
    lambda /= lambda.sum();
    std::vector<CoverTerm> out;
    for (Eigen::Index c = 0; c < m; ++c) {
      if (lambda(c) > 0.0) {
        const std::size_t idx = simplex[static_cast<std::size_t>(c)];
        const auto p = grid.points()[idx];
        out.push_back({ idx, std::vector<double>(p.begin(), p.end()), lambda(c) });
      }
    }
    return out;
  }
  fail(ErrorKind::out_of_domain, "point is not covered by the grid's triangulation");
}

} // namespace

std::vector<CoverTerm> convex_combination_cover(const Grid& grid, std::span<const double> x)
{
  if (x.size() != grid.domain().dim()) {
    fail(ErrorKind::invalid_input, "cover query has the wrong dimension");
  }
  if (!grid.domain().contains(x)) {
    fail(ErrorKind::out_of_domain, "cover query lies outside the grid's domain");
  }
  return grid.lattice() ? lattice_cover(grid, x) : simplex_cover(grid, x);
}

} // namespace convexreg::geometry
