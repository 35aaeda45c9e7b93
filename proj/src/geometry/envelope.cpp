#include "convexreg/geometry/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "convexreg/error.hpp"
#include "convexreg/parallel.hpp"

namespace convexreg::geometry {

ConvexEnvelope::ConvexEnvelope(std::vector<AffinePiece> pieces, PolyhedralDomain domain,
                               Shape shape, double containment_tolerance)
  : pieces_(std::move(pieces))
  , domain_(std::move(domain))
  , shape_(shape)
  , containment_tol_(containment_tolerance)
{
  if (pieces_.empty()) {
    fail(ErrorKind::invalid_input, "an envelope needs at least one affine piece");
  }
  for (const auto& p : pieces_) {
    if (p.gradient.size() != domain_.dim()) {
      fail(ErrorKind::invalid_input, "affine piece dimension does not match the domain");
    }
    const bool finite = std::isfinite(p.offset) &&
                        std::all_of(p.gradient.begin(), p.gradient.end(),
                                    [](double a) { return std::isfinite(a); });
    if (!finite) {
      fail(ErrorKind::invalid_input, "affine piece has non-finite coefficients");
    }
  }
}

double ConvexEnvelope::max_of_pieces(std::span<const double> x) const
{
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    best = std::max(best, p(x));
  }
  return best;
}

double ConvexEnvelope::evaluate(std::span<const double> x, bool extend) const
{
  if (x.size() != dim()) {
    fail(ErrorKind::invalid_input, "evaluation point has dimension " + std::to_string(x.size()) +
                                     ", expected " + std::to_string(dim()));
  }
  if (!extend && !domain_.contains(x, containment_tol_)) {
    fail(ErrorKind::out_of_domain, "evaluation point lies outside the envelope's domain");
  }
  const double v = max_of_pieces(x);
  return shape_ == Shape::concave ? -v : v;
}

ConvexEnvelope ConvexEnvelope::with_shape(Shape shape) const
{
  ConvexEnvelope copy = *this;
  copy.shape_ = shape;
  return copy;
}

void ConvexEnvelope::set_support(PointSet support, std::vector<double> values,
                                 std::vector<std::vector<std::size_t>> facets)
{
  support_ = std::move(support);
  support_values_ = std::move(values);
  facets_ = std::move(facets);
}

double evaluate(const ConvexEnvelope& envelope, std::span<const double> x, bool extend)
{
  return envelope.evaluate(x, extend);
}

std::vector<double> evaluate_many_serial(const ConvexEnvelope& envelope, const PointSet& xs,
                                         bool extend)
{
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = envelope.evaluate(xs[i], extend);
  }
  return out;
}

std::vector<double> evaluate_many(const ConvexEnvelope& envelope, const PointSet& xs, bool extend)
{
  constexpr std::size_t block = 256;
  std::vector<double> out(xs.size());
  const std::size_t blocks = (xs.size() + block - 1) / block;
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(xs.size(), (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) {
      out[i] = envelope.evaluate(xs[i], extend);
    }
  });
  return out;
}

} // namespace convexreg::geometry
