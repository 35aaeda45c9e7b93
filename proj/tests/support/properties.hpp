#pragma once

// Randomized property checks shared by the unit and acceptance tests.

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/geometry/envelope.hpp"

namespace convexreg::testing {

inline std::vector<double> random_point_in(const geometry::PolyhedralDomain& domain,
                                           std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(domain.dim());
  do {
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] = domain.lower()[k] + u(rng) * (domain.upper()[k] - domain.lower()[k]);
    }
  } while (!domain.contains(x, 0.0));
  return x;
}

// Largest midpoint-convexity defect phi(t x + (1-t) y) - t phi(x) - (1-t) phi(y)
// over random triples in the domain (<= 0 for a convex function).
template <class F>
double convexity_defect(F&& phi, const geometry::PolyhedralDomain& domain, std::size_t triples,
                        std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = -1.0;
  std::vector<double> z(domain.dim());
  for (std::size_t i = 0; i < triples; ++i) {
    const auto x = random_point_in(domain, rng);
    const auto y = random_point_in(domain, rng);
    const double t = u(rng);
    for (std::size_t k = 0; k < z.size(); ++k) {
      z[k] = t * x[k] + (1.0 - t) * y[k];
    }
    worst = std::max(worst, phi(z) - t * phi(x) - (1.0 - t) * phi(y));
  }
  return worst;
}

inline double convexity_defect(const geometry::ConvexEnvelope& env, std::size_t triples,
                               std::uint64_t seed)
{
  const double sign = env.shape() == geometry::Shape::concave ? -1.0 : 1.0;
  return convexity_defect(
    [&](const std::vector<double>& x) { return sign * env.evaluate(x, true); }, env.domain(),
    triples, seed);
}

} // namespace convexreg::testing
