#include "convexreg/geometry/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "convexreg/error.hpp"
#include "convexreg/geometry/hull.hpp"

namespace convexreg::geometry {

namespace {

constexpr double kMaxLatticePoints = 2.0e7;

double lattice_coordinate(double lo, double hi, std::size_t i, std::size_t m)
{
  if (i == 0) {
    return lo;
  }
  if (i + 1 == m) {
    return hi;
  }
  const double t = static_cast<double>(i) / static_cast<double>(m - 1);
  return lo + t * (hi - lo);
}

PointSet box_lattice(std::span<const double> lower, std::span<const double> upper,
                     std::size_t m)
{
  const std::size_t d = lower.size();
  const double count = std::pow(static_cast<double>(m), static_cast<double>(d));
  if (count > kMaxLatticePoints) {
    fail(ErrorKind::invalid_grid, "lattice with " + std::to_string(m) + "^" +
                                    std::to_string(d) + " points is too large");
  }
  PointSet pts(d);
  pts.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(d);
  while (true) {
    for (std::size_t k = 0; k < d; ++k) {
      p[k] = lattice_coordinate(lower[k], upper[k], idx[k], m);
    }
    pts.push_back(p);
    std::size_t k = 0;
    while (k < d && ++idx[k] == m) {
      idx[k] = 0;
      ++k;
    }
    if (k == d) {
      break;
    }
  }
  return pts;
}

void require_per_axis(std::size_t per_axis)
{
  if (per_axis < 2) {
    fail(ErrorKind::invalid_grid,
         "grid needs at least 2 points per axis, got " + std::to_string(per_axis));
  }
}

} // namespace

Grid uniform_grid(const PolyhedralDomain& domain, std::size_t per_axis)
{
  require_per_axis(per_axis);
  if (!domain.is_box()) {
    fail(ErrorKind::invalid_grid, "uniform_grid requires a box domain");
  }
  const std::size_t d = domain.dim();
  Grid g;
  g.domain_ = domain;
  g.points_ = box_lattice(domain.lower(), domain.upper(), per_axis);
  LatticeLayout layout;
  layout.lower.assign(domain.lower().begin(), domain.lower().end());
  layout.upper.assign(domain.upper().begin(), domain.upper().end());
  layout.per_axis = per_axis;
  double max_spacing = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    layout.spacing.push_back((layout.upper[k] - layout.lower[k]) / static_cast<double>(per_axis - 1));
    max_spacing = std::max(max_spacing, layout.spacing.back());
  }
  g.mesh_ = max_spacing * std::sqrt(static_cast<double>(d));
  g.lattice_ = std::move(layout);
  return g;
}

Grid lattice_grid(const PolyhedralDomain& domain, std::size_t per_axis)
{
  require_per_axis(per_axis);
  if (domain.is_box()) {
    return uniform_grid(domain, per_axis);
  }
  const auto lattice = box_lattice(domain.lower(), domain.upper(), per_axis);
  PointSet pts = domain.vertices();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (domain.contains(lattice[i], 0.0)) {
      pts.push_back(lattice[i]);
    }
  }
  return explicit_grid(domain, std::move(pts));
}

Grid explicit_grid(const PolyhedralDomain& domain, PointSet points)
{
  const std::size_t d = domain.dim();
  if (points.dim() != d || points.size() < d + 1) {
    fail(ErrorKind::invalid_grid, "grid needs at least d+1 points of the domain's dimension");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!domain.contains(points[i])) {
      fail(ErrorKind::invalid_grid, "grid point " + std::to_string(i) + " lies outside the domain");
    }
  }
  const auto& verts = domain.vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    bool found = false;
    for (std::size_t i = 0; i < points.size() && !found; ++i) {
      found = distance(points[i], verts[v]) <= 1e-12;
    }
    if (!found) {
      fail(ErrorKind::invalid_grid,
           "grid is missing domain vertex " + std::to_string(v) + ", so conv(M) != Q");
    }
  }

  Grid g;
  g.domain_ = domain;
  if (d == 1) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const double gap = points[order[k + 1]][0] - points[order[k]][0];
      if (gap > 0.0) {
        g.simplices_.push_back({ order[k], order[k + 1] });
        g.mesh_ = std::max(g.mesh_, gap);
      }
    }
  } else {
    // Delaunay triangulation: lower facets of points lifted onto a paraboloid.
    PointSet lifted(d + 1);
    std::vector<double> q(d + 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        q[k] = points[i][k];
        r2 += q[k] * q[k];
      }
      q[d] = r2;
      lifted.push_back(q);
    }
    for (const auto& f : convex_hull(lifted)) {
      if (f.normal[d] < -1e-12) {
        for (std::size_t a = 0; a < f.vertices.size(); ++a) {
          for (std::size_t b = a + 1; b < f.vertices.size(); ++b) {
            g.mesh_ = std::max(g.mesh_, distance(points[f.vertices[a]], points[f.vertices[b]]));
          }
        }
        g.simplices_.push_back(f.vertices);
      }
    }
  }
  g.points_ = std::move(points);
  return g;
}

} // namespace convexreg::geometry
