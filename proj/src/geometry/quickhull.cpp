#include "convexreg/geometry/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "convexreg/error.hpp"

namespace convexreg::geometry {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> p)
{
  return { p.data(), static_cast<Eigen::Index>(p.size()) };
}

// Distance of `target` from the affine hull of `pts[ids]`.
double affine_distance(const PointSet& pts, const std::vector<std::size_t>& ids,
                       std::span<const double> target)
{
  const auto origin = as_vector(pts[ids.front()]);
  std::vector<Eigen::VectorXd> basis;
  for (std::size_t k = 1; k < ids.size(); ++k) {
    Eigen::VectorXd e = as_vector(pts[ids[k]]) - origin;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        e -= b.dot(e) * b;
      }
    }
    const double norm = e.norm();
    if (norm > 0.0) {
      basis.push_back(e / norm);
    }
  }
  Eigen::VectorXd r = as_vector(target) - origin;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      r -= b.dot(r) * b;
    }
  }
  return r.norm();
}

struct Facet
{
  std::vector<std::size_t> verts;
  std::vector<std::size_t> nbrs; // nbrs[k] is the facet across the ridge opposite verts[k]
  Eigen::VectorXd normal;
  double offset = 0.0;
  std::vector<std::size_t> outside;
  bool alive = true;
  std::size_t stamp = npos;
  bool visible = false;
};

class QuickHull
{
public:
  QuickHull(const PointSet& pts, double eps)
    : pts_(pts)
    , dim_(pts.dim())
    , eps_(eps)
  {}

  std::vector<HullFacet> run()
  {
    const auto simplex = affine_basis(pts_, eps_);
    if (simplex.size() != dim_ + 1) {
      fail(ErrorKind::degenerate_geometry,
           "point set spans only " + std::to_string(simplex.size() - 1) + " of " +
             std::to_string(dim_) + " dimensions");
    }
    build_simplex(simplex);
    expand();
    return collect();
  }

private:
  double dist(const Facet& f, std::size_t i) const
  {
    return f.normal.dot(as_vector(pts_[i])) - f.offset;
  }

  // Plane through the facet vertices via the generalized cross product of
  // the edge vectors, oriented away from the interior point.
  void set_plane(Facet& f) const
  {
    const auto d = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd edges(d - 1, d);
    const auto origin = as_vector(pts_[f.verts[0]]);
    double edge_scale = 1.0;
    for (Eigen::Index k = 1; k < d; ++k) {
      edges.row(k - 1) = (as_vector(pts_[f.verts[static_cast<std::size_t>(k)]]) - origin).transpose();
      edge_scale *= std::max(edges.row(k - 1).norm(), std::numeric_limits<double>::min());
    }
    Eigen::VectorXd n(d);
    if (d == 2) {
      n << -edges(0, 1), edges(0, 0);
    } else if (d == 3) {
      n = Eigen::Vector3d(edges.row(0).transpose()).cross(Eigen::Vector3d(edges.row(1).transpose()));
    } else {
      Eigen::MatrixXd minor(d - 1, d - 1);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index c = 0, mc = 0; c < d; ++c) {
          if (c != i) {
            minor.col(mc++) = edges.col(c);
          }
        }
        const double det = minor.partialPivLu().determinant();
        n(i) = (i % 2 == 0) ? det : -det;
      }
    }
    const double norm = n.norm();
    if (!(norm > 1e-300) || norm <= 1e-15 * edge_scale) {
      fail(ErrorKind::degenerate_geometry, "hull construction produced a degenerate facet");
    }
    n /= norm;
    double offset = 0.0;
    for (const auto v : f.verts) {
      offset += n.dot(as_vector(pts_[v]));
    }
    offset /= static_cast<double>(f.verts.size());
    if (n.dot(interior_) - offset > 0.0) {
      n = -n;
      offset = -offset;
    }
    f.normal = std::move(n);
    f.offset = offset;
  }

  void build_simplex(const std::vector<std::size_t>& simplex)
  {
    interior_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
    for (const auto v : simplex) {
      interior_ += as_vector(pts_[v]);
    }
    interior_ /= static_cast<double>(simplex.size());

    const std::size_t count = dim_ + 1;
    facets_.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      Facet& f = facets_[k];
      for (std::size_t j = 0; j < count; ++j) {
        if (j != k) {
          f.verts.push_back(simplex[j]);
          f.nbrs.push_back(j);
        }
      }
      set_plane(f);
    }

    std::vector<bool> used(pts_.size(), false);
    for (const auto v : simplex) {
      used[v] = true;
    }
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (!used[i]) {
        assign(i, 0, count);
      }
    }
  }

  void assign(std::size_t point, std::size_t first, std::size_t last)
  {
    for (std::size_t fid = first; fid < last; ++fid) {
      Facet& f = facets_[fid];
      if (f.alive && dist(f, point) > eps_) {
        f.outside.push_back(point);
        return;
      }
    }
  }

  std::vector<std::size_t> ridge_of(const Facet& f, std::size_t skip) const
  {
    std::vector<std::size_t> r;
    r.reserve(f.verts.size() - 1);
    for (std::size_t k = 0; k < f.verts.size(); ++k) {
      if (k != skip) {
        r.push_back(f.verts[k]);
      }
    }
    return r;
  }

  void expand()
  {
    std::vector<std::size_t> work;
    for (std::size_t fid = 0; fid < facets_.size(); ++fid) {
      work.push_back(fid);
    }
    std::size_t iteration = 0;
    while (!work.empty()) {
      const std::size_t fid = work.back();
      work.pop_back();
      if (!facets_[fid].alive || facets_[fid].outside.empty()) {
        continue;
      }
      ++iteration;
      const std::size_t apex = farthest(facets_[fid]);
      const auto created = add_point(fid, apex, iteration);
      work.insert(work.end(), created.begin(), created.end());
    }
  }

  std::size_t farthest(const Facet& f) const
  {
    std::size_t best = f.outside.front();
    double best_d = -1.0;
    for (const auto i : f.outside) {
      const double d = dist(f, i);
      if (d > best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  }

  struct HorizonRidge
  {
    std::size_t facet;
    std::size_t slot;
  };

  std::vector<std::size_t> add_point(std::size_t start, std::size_t apex, std::size_t iteration)
  {
    const auto apex_point = pts_[apex];
    std::vector<std::size_t> visible;
    auto mark_visible = [&](std::size_t fid) {
      facets_[fid].stamp = iteration;
      facets_[fid].visible = true;
      visible.push_back(fid);
    };
    mark_visible(start);

    std::vector<HorizonRidge> horizon;
    std::size_t scanned = 0;
    while (true) {
      // Flood the visible region from facets not yet scanned.
      for (; scanned < visible.size(); ++scanned) {
        const Facet& v = facets_[visible[scanned]];
        for (const auto nb : v.nbrs) {
          Facet& g = facets_[nb];
          if (g.stamp == iteration) {
            continue;
          }
          g.stamp = iteration;
          g.visible = dist(g, apex) > eps_;
          if (g.visible) {
            visible.push_back(nb);
          }
        }
      }
      // A horizon ridge whose affine hull passes within eps of the apex
      // would give a flat cone facet; absorb the neighbour instead.
      horizon.clear();
      bool absorbed = false;
      for (std::size_t vi = 0; vi < visible.size() && !absorbed; ++vi) {
        const Facet& v = facets_[visible[vi]];
        for (std::size_t k = 0; k < v.nbrs.size(); ++k) {
          const std::size_t nb = v.nbrs[k];
          if (facets_[nb].visible) {
            continue;
          }
          if (affine_distance(pts_, ridge_of(v, k), apex_point) <= eps_) {
            facets_[nb].visible = true;
            visible.push_back(nb);
            absorbed = true;
            break;
          }
          horizon.push_back({ visible[vi], k });
        }
      }
      if (!absorbed) {
        break;
      }
    }

    std::vector<std::size_t> created;
    created.reserve(horizon.size());
    std::map<std::vector<std::size_t>, std::pair<std::size_t, std::size_t>> open_ridges;
    for (const auto& h : horizon) {
      const std::size_t nb = facets_[h.facet].nbrs[h.slot];
      Facet nf;
      nf.verts = ridge_of(facets_[h.facet], h.slot);
      nf.verts.push_back(apex);
      nf.nbrs.assign(nf.verts.size(), npos);
      nf.nbrs.back() = nb;
      set_plane(nf);
      const std::size_t nid = facets_.size();
      facets_.push_back(std::move(nf));
      created.push_back(nid);

      Facet& g = facets_[nb];
      const auto back = std::find(g.nbrs.begin(), g.nbrs.end(), h.facet);
      if (back == g.nbrs.end()) {
        fail(ErrorKind::degenerate_geometry, "hull adjacency is inconsistent");
      }
      *back = nid;

      for (std::size_t j = 0; j + 1 < facets_[nid].verts.size(); ++j) {
        auto key = ridge_of(facets_[nid], j);
        std::sort(key.begin(), key.end());
        if (auto it = open_ridges.find(key); it != open_ridges.end()) {
          const auto [other, slot] = it->second;
          facets_[nid].nbrs[j] = other;
          facets_[other].nbrs[slot] = nid;
          open_ridges.erase(it);
        } else {
          open_ridges.emplace(std::move(key), std::make_pair(nid, j));
        }
      }
    }
    if (!open_ridges.empty()) {
      fail(ErrorKind::degenerate_geometry, "hull horizon is not a closed ridge cycle");
    }

    const std::size_t first_new = created.empty() ? facets_.size() : created.front();
    for (const auto fid : visible) {
      Facet& f = facets_[fid];
      f.alive = false;
      for (const auto i : f.outside) {
        if (i != apex) {
          assign(i, first_new, facets_.size());
        }
      }
      f.outside.clear();
      f.outside.shrink_to_fit();
    }
    return created;
  }

  std::vector<HullFacet> collect() const
  {
    std::vector<HullFacet> out;
    for (const auto& f : facets_) {
      if (!f.alive) {
        continue;
      }
      HullFacet h;
      h.vertices = f.verts;
      h.normal.assign(f.normal.data(), f.normal.data() + f.normal.size());
      h.offset = f.offset;
      out.push_back(std::move(h));
    }
    return out;
  }

  const PointSet& pts_;
  std::size_t dim_;
  double eps_;
  Eigen::VectorXd interior_;
  std::vector<Facet> facets_;
};

} // namespace

double hull_tolerance(const PointSet& points)
{
  double scale = 1.0;
  for (const double c : points.coords()) {
    scale = std::max(scale, std::abs(c));
  }
  return 1e-13 * scale;
}

std::vector<std::size_t> affine_basis(const PointSet& points, double eps)
{
  const std::size_t n = points.size();
  if (n == 0) {
    return {};
  }
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto a = points[i];
    const auto b = points[first];
    if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) {
      first = i;
    }
  }
  std::vector<std::size_t> chosen{ first };
  const auto origin = as_vector(points[first]);
  std::vector<Eigen::VectorXd> basis;
  while (chosen.size() <= points.dim()) {
    std::size_t best = npos;
    double best_d = eps;
    Eigen::VectorXd best_r;
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::VectorXd r = as_vector(points[i]) - origin;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          r -= b.dot(r) * b;
        }
      }
      const double d = r.norm();
      if (d > best_d) {
        best_d = d;
        best = i;
        best_r = std::move(r);
      }
    }
    if (best == npos) {
      break;
    }
    chosen.push_back(best);
    basis.push_back(best_r / best_d);
  }
  return chosen;
}

std::vector<HullFacet> convex_hull(const PointSet& points, double eps)
{
  if (points.dim() < 2) {
    fail(ErrorKind::invalid_input, "convex_hull requires dimension >= 2");
  }
  return QuickHull(points, eps).run();
}

std::vector<HullFacet> convex_hull(const PointSet& points)
{
  return convex_hull(points, hull_tolerance(points));
}

} // namespace convexreg::geometry
