#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "convexreg/error.hpp"
#include "convexreg/geometry/envelope.hpp"
#include "convexreg/geometry/hull.hpp"

namespace convexreg::geometry {

namespace {

struct Collapsed
{
  PointSet xs;
  std::vector<double> values;
};

// Sorts lexicographically by x and keeps the minimum value per distinct x.
Collapsed collapse_duplicates(const PointSet& xs, std::span<const double> values)
{
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = xs[a];
    const auto pb = xs[b];
    if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end())) {
      return true;
    }
    if (std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(), pa.end())) {
      return false;
    }
    return a < b;
  });
  Collapsed out{ PointSet(xs.dim()), {} };
  for (const auto i : order) {
    if (!out.values.empty() && std::ranges::equal(xs[i], out.xs[out.xs.size() - 1])) {
      out.values.back() = std::min(out.values.back(), values[i]);
    } else {
      out.xs.push_back(xs[i]);
      out.values.push_back(values[i]);
    }
  }
  return out;
}

// Andrew's monotone chain on x-sorted, distinct samples; collinear interior
// points are dropped so a line gives a single piece.
void lower_chain_1d(const Collapsed& c, std::vector<AffinePiece>& pieces,
                    std::vector<std::vector<std::size_t>>& facets)
{
  std::vector<std::size_t> chain;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    while (chain.size() >= 2) {
      const std::size_t o = chain[chain.size() - 2];
      const std::size_t a = chain.back();
      const double cross = (c.xs[a][0] - c.xs[o][0]) * (c.values[i] - c.values[o]) -
                           (c.values[a] - c.values[o]) * (c.xs[i][0] - c.xs[o][0]);
      if (cross > 0.0) {
        break;
      }
      chain.pop_back();
    }
    chain.push_back(i);
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const double x0 = c.xs[chain[k]][0];
    const double x1 = c.xs[chain[k + 1]][0];
    const double v0 = c.values[chain[k]];
    const double v1 = c.values[chain[k + 1]];
    const double slope = (v1 - v0) / (x1 - x0);
    pieces.push_back({ { slope }, v0 - slope * x0 });
    facets.push_back({ chain[k], chain[k + 1] });
  }
}

AffinePiece least_squares_plane(const Collapsed& c)
{
  const std::size_t d = c.xs.dim();
  const auto n = static_cast<Eigen::Index>(c.values.size());
  Eigen::MatrixXd design(n, static_cast<Eigen::Index>(d + 1));
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto x = c.xs[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < d; ++k) {
      design(i, static_cast<Eigen::Index>(k)) = x[k];
    }
    design(i, static_cast<Eigen::Index>(d)) = 1.0;
    rhs(i) = c.values[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  AffinePiece p;
  p.gradient.assign(coef.data(), coef.data() + d);
  p.offset = coef(static_cast<Eigen::Index>(d));
  return p;
}

// Plane through the d+1 facet vertices, solved for the value coordinate.
AffinePiece facet_piece(const Collapsed& c, const std::vector<std::size_t>& verts)
{
  const std::size_t d = c.xs.dim();
  const auto m = static_cast<Eigen::Index>(d + 1);
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto x = c.xs[verts[static_cast<std::size_t>(r)]];
    for (std::size_t k = 0; k < d; ++k) {
      a(r, static_cast<Eigen::Index>(k)) = x[k];
    }
    a(r, m - 1) = 1.0;
    rhs(r) = c.values[verts[static_cast<std::size_t>(r)]];
  }
  const Eigen::VectorXd coef = a.fullPivLu().solve(rhs);
  AffinePiece p;
  p.gradient.assign(coef.data(), coef.data() + d);
  p.offset = coef(m - 1);
  return p;
}

bool close_pieces(const AffinePiece& a, const AffinePiece& b, double tol)
{
  if (std::abs(a.offset - b.offset) > tol) {
    return false;
  }
  for (std::size_t k = 0; k < a.gradient.size(); ++k) {
    if (std::abs(a.gradient[k] - b.gradient[k]) > tol) {
      return false;
    }
  }
  return true;
}

std::vector<AffinePiece> merge_pieces(std::vector<AffinePiece> pieces, double tol)
{
  std::sort(pieces.begin(), pieces.end(), [](const AffinePiece& a, const AffinePiece& b) {
    if (a.gradient != b.gradient) {
      return std::lexicographical_compare(a.gradient.begin(), a.gradient.end(),
                                          b.gradient.begin(), b.gradient.end());
    }
    return a.offset < b.offset;
  });
  constexpr std::size_t window = 8;
  std::vector<AffinePiece> kept;
  for (auto& p : pieces) {
    bool merged = false;
    const std::size_t from = kept.size() > window ? kept.size() - window : 0;
    for (std::size_t k = from; k < kept.size() && !merged; ++k) {
      if (close_pieces(kept[k], p, tol)) {
        // Keep the larger offset so the envelope never drops below a sample.
        kept[k].offset = std::max(kept[k].offset, p.offset);
        merged = true;
      }
    }
    if (!merged) {
      kept.push_back(std::move(p));
    }
  }
  return kept;
}

} // namespace

ConvexEnvelope lower_hull(const PointSet& xs, std::span<const double> values,
                          const HullOptions& options)
{
  if (xs.size() != values.size()) {
    fail(ErrorKind::invalid_input, "lower_hull: " + std::to_string(xs.size()) + " points but " +
                                     std::to_string(values.size()) + " values");
  }
  if (xs.empty()) {
    fail(ErrorKind::degenerate_geometry, "lower_hull: no samples");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      fail(ErrorKind::invalid_input, "lower_hull: non-finite value at sample " + std::to_string(i));
    }
  }
  for (const double c : xs.coords()) {
    if (!std::isfinite(c)) {
      fail(ErrorKind::invalid_input, "lower_hull: non-finite coordinate");
    }
  }

  const std::size_t d = xs.dim();
  Collapsed c = collapse_duplicates(xs, values);
  const double x_eps = hull_tolerance(c.xs);
  if (affine_basis(c.xs, x_eps).size() != d + 1) {
    fail(ErrorKind::degenerate_geometry,
         "lower_hull: need " + std::to_string(d + 1) + " affinely independent sample locations");
  }

  double scale = 1.0;
  if (options.relative) {
    for (const double v : c.xs.coords()) {
      scale = std::max(scale, std::abs(v));
    }
    for (const double v : c.values) {
      scale = std::max(scale, std::abs(v));
    }
  }
  const double facet_tol = options.facet_tolerance * scale;
  const double merge_tol = options.merge_tolerance * scale;
  const double containment_tol = options.containment_tolerance * scale;

  std::vector<AffinePiece> pieces;
  std::vector<std::vector<std::size_t>> facets;
  if (d == 1) {
    lower_chain_1d(c, pieces, facets);
  } else {
    PointSet lifted(d + 1);
    lifted.reserve(c.values.size());
    std::vector<double> q(d + 1);
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      std::copy(c.xs[i].begin(), c.xs[i].end(), q.begin());
      q[d] = c.values[i];
      lifted.push_back(q);
    }
    const double eps = hull_tolerance(lifted);
    if (affine_basis(lifted, eps).size() != d + 2) {
      pieces.push_back(least_squares_plane(c));
    } else {
      for (auto& f : convex_hull(lifted, eps)) {
        if (f.normal[d] < -facet_tol) {
          pieces.push_back(facet_piece(c, f.vertices));
          facets.push_back(std::move(f.vertices));
        }
      }
    }
  }
  pieces = merge_pieces(std::move(pieces), merge_tol);

  PolyhedralDomain domain =
    options.domain ? *options.domain : PolyhedralDomain::hull_of(c.xs);
  if (domain.dim() != d) {
    fail(ErrorKind::invalid_domain, "lower_hull: domain dimension does not match the samples");
  }
  ConvexEnvelope env(std::move(pieces), std::move(domain), Shape::convex, containment_tol);
  env.set_support(std::move(c.xs), std::move(c.values), std::move(facets));
  return env;
}

} // namespace convexreg::geometry
