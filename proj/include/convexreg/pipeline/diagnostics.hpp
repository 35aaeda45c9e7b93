#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/geometry/point_set.hpp"
#include "convexreg/pipeline/pipeline.hpp"

namespace convexreg::pipeline {

using RealFunction = std::function<double(std::span<const double>)>;

// Dense lattice used for sup-norm proxies: 1001 points in 1-d, 101 per axis
// otherwise, restricted to the domain.
geometry::PointSet dense_test_grid(const geometry::PolyhedralDomain& domain);
std::size_t dense_points_per_axis(std::size_t dim);

// Largest finite-difference gradient norm of f over the dense lattice.
double estimate_lipschitz(const RealFunction& f, const geometry::PolyhedralDomain& domain);

struct DiagnosticsReport
{
  double eps_n = 0.0;         // max over the grid samples of |f_n - f|
  double lipschitz_L = 0.0;
  bool lipschitz_estimated = false;
  double delta_n = 0.0;       // grid mesh
  double bound_lo = 0.0;      // -eps_n (or -(eps_n + L delta_n) for concave fits)
  double bound_hi = 0.0;      // eps_n + L delta_n (or eps_n for concave fits)
  double observed_min = 0.0;  // of phi_n - f over the dense test grid
  double observed_max = 0.0;
  double tolerance = 1e-9;
  std::size_t test_points = 0;

  // Sup-norm proxies: smoother error over the test grid and the grid
  // samples, envelope error over the test grid.
  double smoother_sup_error = 0.0;
  double envelope_sup_error = 0.0;
  std::size_t smoother_failures = 0; // test points where f_n was not evaluable

  bool theorem_holds() const noexcept
  {
    return observed_min >= bound_lo - tolerance && observed_max <= bound_hi + tolerance;
  }
  bool corollary_holds() const noexcept
  {
    return envelope_sup_error <= smoother_sup_error + lipschitz_L * delta_n + tolerance;
  }
};

// Report only: never throws for a violated bound. L is estimated when not
// supplied.
DiagnosticsReport check_theorem1(const RealFunction& f_true, const ConvexFit& fit,
                                 std::optional<double> lipschitz = std::nullopt,
                                 double tolerance = 1e-9);

} // namespace convexreg::pipeline
