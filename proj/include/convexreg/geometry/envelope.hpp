#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/geometry/point_set.hpp"

namespace convexreg::geometry {

enum class Shape { convex, concave };

struct AffinePiece
{
  std::vector<double> gradient;
  double offset = 0.0;

  double operator()(std::span<const double> x) const { return dot(gradient, x) + offset; }

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

struct HullOptions
{
  // Lower facets whose unit normal has |last coordinate| below this are
  // vertical and carry no graph information.
  double facet_tolerance = 1e-12;
  // Pieces closer than this in every coefficient are merged.
  double merge_tolerance = 1e-11;
  // Slack for the domain membership test in evaluate().
  double containment_tolerance = 1e-9;
  // Scale the three tolerances above by the largest absolute coordinate.
  bool relative = false;
  // Domain of the envelope; defaults to the convex hull of the sample points.
  std::optional<PolyhedralDomain> domain;
};

// phi(x) = max_k (a_k . x + b_k) over a polyhedral domain. A concave envelope
// stores the pieces of the convex problem for the negated values and reports
// -max_k(...), i.e. a minimum of affine functions.
class ConvexEnvelope
{
public:
  ConvexEnvelope() = default;
  ConvexEnvelope(std::vector<AffinePiece> pieces, PolyhedralDomain domain,
                 Shape shape = Shape::convex, double containment_tolerance = 1e-9);

  std::size_t dim() const noexcept { return domain_.dim(); }
  const std::vector<AffinePiece>& pieces() const noexcept { return pieces_; }
  const PolyhedralDomain& domain() const noexcept { return domain_; }
  Shape shape() const noexcept { return shape_; }
  double containment_tolerance() const noexcept { return containment_tol_; }

  // Samples the envelope was built from (duplicates collapsed), and the
  // lower-hull facets as index lists into them.
  const PointSet& support() const noexcept { return support_; }
  const std::vector<double>& support_values() const noexcept { return support_values_; }
  const std::vector<std::vector<std::size_t>>& facets() const noexcept { return facets_; }

  // Throws out_of_domain when extend is false and x is outside the domain.
  double evaluate(std::span<const double> x, bool extend = false) const;

  // max_k (a_k . x + b_k), ignoring the shape flag and the domain.
  double max_of_pieces(std::span<const double> x) const;

  ConvexEnvelope with_shape(Shape shape) const;

  void set_support(PointSet support, std::vector<double> values,
                   std::vector<std::vector<std::size_t>> facets);

private:
  std::vector<AffinePiece> pieces_;
  PolyhedralDomain domain_;
  Shape shape_ = Shape::convex;
  double containment_tol_ = 1e-9;
  PointSet support_;
  std::vector<double> support_values_;
  std::vector<std::vector<std::size_t>> facets_;
};

// Greatest convex function below the samples: the lower facets of the
// convex hull of the lifted points (x_i, v_i). Duplicate x keep the minimum
// value. Needs d+1 affinely independent x; flat lifted data yields a single
// least-squares plane.
ConvexEnvelope lower_hull(const PointSet& xs, std::span<const double> values,
                          const HullOptions& options = {});

double evaluate(const ConvexEnvelope& envelope, std::span<const double> x, bool extend = false);

// Evaluates at every point; the parallel version splits the points across
// threads and returns the same values as the serial one.
std::vector<double> evaluate_many(const ConvexEnvelope& envelope, const PointSet& xs,
                                  bool extend = false);
std::vector<double> evaluate_many_serial(const ConvexEnvelope& envelope, const PointSet& xs,
                                         bool extend = false);

} // namespace convexreg::geometry
