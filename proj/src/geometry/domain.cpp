#include "convexreg/geometry/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convexreg/error.hpp"
#include "convexreg/geometry/hull.hpp"

namespace convexreg::geometry {

namespace {

void require_finite(const PointSet& points)
{
  for (const double c : points.coords()) {
    if (!std::isfinite(c)) {
      fail(ErrorKind::invalid_domain, "domain vertex has a non-finite coordinate");
    }
  }
}

std::vector<Halfspace> facet_halfspaces(const std::vector<HullFacet>& facets, double eps)
{
  std::vector<Halfspace> out;
  for (const auto& f : facets) {
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Halfspace& h) {
      double diff = std::abs(h.offset - f.offset);
      for (std::size_t k = 0; k < h.normal.size(); ++k) {
        diff = std::max(diff, std::abs(h.normal[k] - f.normal[k]));
      }
      return diff <= eps;
    });
    if (!duplicate) {
      out.push_back({ f.normal, f.offset });
    }
  }
  return out;
}

// True when points[i] lies in the convex hull of the remaining points.
bool is_redundant(const PointSet& points, std::size_t i, double eps)
{
  PointSet others(points.dim());
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j != i) {
      others.push_back(points[j]);
    }
  }
  if (affine_basis(others, eps).size() != points.dim() + 1) {
    return false;
  }
  for (const auto& f : convex_hull(others, eps)) {
    if (dot(f.normal, points[i]) - f.offset > eps) {
      return false;
    }
  }
  return true;
}

} // namespace

PolyhedralDomain PolyhedralDomain::from_vertices(PointSet vertices)
{
  if (vertices.dim() == 0 || vertices.empty()) {
    fail(ErrorKind::invalid_domain, "domain needs at least one vertex");
  }
  require_finite(vertices);
  const std::size_t d = vertices.dim();
  PolyhedralDomain dom;
  if (d == 1) {
    if (vertices.size() != 2 || vertices[0][0] == vertices[1][0]) {
      fail(ErrorKind::invalid_domain,
           "a 1-d domain is given by exactly two distinct endpoints");
    }
    const double lo = std::min(vertices[0][0], vertices[1][0]);
    const double hi = std::max(vertices[0][0], vertices[1][0]);
    dom.vertices_ = PointSet(1, { lo, hi });
    dom.halfspaces_ = { { { -1.0 }, -lo }, { { 1.0 }, hi } };
    dom.is_box_ = true;
    dom.finalize_bounds();
    return dom;
  }
  const double eps = hull_tolerance(vertices) * 10.0;
  if (affine_basis(vertices, eps).size() != d + 1) {
    fail(ErrorKind::invalid_domain, "domain vertices are not full dimensional");
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (is_redundant(vertices, i, eps)) {
      fail(ErrorKind::invalid_domain,
           "domain vertex " + std::to_string(i) + " is not an extreme point");
    }
  }
  dom.halfspaces_ = facet_halfspaces(convex_hull(vertices, eps), 1e-12);
  dom.vertices_ = std::move(vertices);
  dom.finalize_bounds();
  return dom;
}

PolyhedralDomain PolyhedralDomain::hull_of(const PointSet& points)
{
  if (points.empty()) {
    fail(ErrorKind::invalid_domain, "cannot take the hull of an empty point set");
  }
  require_finite(points);
  if (points.dim() == 1) {
    const auto [lo, hi] = std::minmax_element(points.coords().begin(), points.coords().end());
    return from_vertices(PointSet(1, { *lo, *hi }));
  }
  const double eps = hull_tolerance(points) * 10.0;
  if (affine_basis(points, eps).size() != points.dim() + 1) {
    fail(ErrorKind::degenerate_geometry, "points are not full dimensional");
  }
  std::vector<std::size_t> ids;
  for (const auto& f : convex_hull(points, eps)) {
    ids.insert(ids.end(), f.vertices.begin(), f.vertices.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  PointSet candidates(points.dim());
  for (const auto i : ids) {
    candidates.push_back(points[i]);
  }
  // Drop hull vertices that sit inside a flat face. Removing a redundant
  // point never makes another one extreme, so one pass suffices.
  for (std::size_t i = 0; i < candidates.size();) {
    if (is_redundant(candidates, i, eps)) {
      PointSet kept(points.dim());
      for (std::size_t j = 0; j < candidates.size(); ++j) {
        if (j != i) {
          kept.push_back(candidates[j]);
        }
      }
      candidates = std::move(kept);
    } else {
      ++i;
    }
  }
  return from_vertices(std::move(candidates));
}

void PolyhedralDomain::finalize_bounds()
{
  const std::size_t d = vertices_.dim();
  lower_.assign(d, INFINITY);
  upper_.assign(d, -INFINITY);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      lower_[k] = std::min(lower_[k], vertices_[i][k]);
      upper_[k] = std::max(upper_[k], vertices_[i][k]);
    }
  }
}

bool PolyhedralDomain::contains(std::span<const double> x, double tol) const
{
  if (x.size() != dim()) {
    return false;
  }
  if (is_box_) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!(x[k] >= lower_[k] - tol && x[k] <= upper_[k] + tol)) {
        return false;
      }
    }
    return true;
  }
  return std::all_of(halfspaces_.begin(), halfspaces_.end(), [&](const Halfspace& h) {
    return dot(h.normal, x) - h.offset <= tol;
  });
}

double PolyhedralDomain::diameter() const
{
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      best = std::max(best, distance(vertices_[i], vertices_[j]));
    }
  }
  return best;
}

PolyhedralDomain make_box_domain(std::span<const double> lower, std::span<const double> upper)
{
  if (lower.empty() || lower.size() != upper.size()) {
    fail(ErrorKind::invalid_domain, "box bounds must be nonempty and of equal dimension");
  }
  const std::size_t d = lower.size();
  for (std::size_t k = 0; k < d; ++k) {
    if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]) || !(lower[k] < upper[k])) {
      fail(ErrorKind::invalid_domain,
           "degenerate box along axis " + std::to_string(k) + ": lower must be below upper");
    }
  }
  if (d > 16) {
    fail(ErrorKind::invalid_domain, "box dimension too large");
  }
  PolyhedralDomain dom;
  dom.vertices_ = PointSet(d);
  std::vector<double> corner(d);
  for (std::size_t mask = 0; mask < (std::size_t{ 1 } << d); ++mask) {
    for (std::size_t k = 0; k < d; ++k) {
      corner[k] = (mask >> k) & 1U ? upper[k] : lower[k];
    }
    dom.vertices_.push_back(corner);
  }
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> n(d, 0.0);
    n[k] = -1.0;
    dom.halfspaces_.push_back({ n, -lower[k] });
    n[k] = 1.0;
    dom.halfspaces_.push_back({ n, upper[k] });
  }
  dom.is_box_ = true;
  dom.finalize_bounds();
  return dom;
}

PolyhedralDomain make_box_domain(std::initializer_list<double> lower,
                                 std::initializer_list<double> upper)
{
  const std::vector<double> lo(lower);
  const std::vector<double> hi(upper);
  return make_box_domain(std::span<const double>(lo), std::span<const double>(hi));
}

} // namespace convexreg::geometry
