#include <doctest.h>

#include <cmath>
#include <random>

#include "convexreg/error.hpp"
#include "convexreg/geometry/cover.hpp"
#include "convexreg/geometry/envelope.hpp"
#include "convexreg/geometry/grid.hpp"
#include "convexreg/geometry/hull.hpp"
#include "oracles/envelope_oracle.hpp"
#include "support/properties.hpp"

using namespace convexreg;
using namespace convexreg::geometry;
using convexreg::testing::envelope_oracle;

namespace {

template <class F>
ErrorKind kind_of(F&& f)
{
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::io;
}

double at(const ConvexEnvelope& env, std::initializer_list<double> x, bool extend = false)
{
  const std::vector<double> v(x);
  return env.evaluate(v, extend);
}

} // namespace

TEST_CASE("box domains")
{
  const auto unit = make_box_domain({ 0.0 }, { 1.0 });
  CHECK(unit.vertices() == PointSet(1, { 0.0, 1.0 }));

  const auto square = make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 });
  CHECK(square.vertices() == PointSet(2, { 0, 0, 1, 0, 0, 1, 1, 1 }));
  CHECK(square.is_box());
  CHECK(square.diameter() == doctest::Approx(std::sqrt(2.0)));

  CHECK(kind_of([] { make_box_domain({ 0.0 }, { 0.0 }); }) == ErrorKind::invalid_domain);
  CHECK(kind_of([] { make_box_domain({ 0.0, 1.0 }, { 1.0, 0.5 }); }) == ErrorKind::invalid_domain);
}

TEST_CASE("polyhedral domains reject non-extreme vertices")
{
  const PointSet tri(2, { 0, 0, 1, 0, 0, 1 });
  const auto dom = PolyhedralDomain::from_vertices(tri);
  CHECK(dom.contains(std::vector<double>{ 0.25, 0.25 }));
  CHECK_FALSE(dom.contains(std::vector<double>{ 0.75, 0.75 }));

  const PointSet with_inner(2, { 0, 0, 1, 0, 0, 1, 0.2, 0.2 });
  CHECK(kind_of([&] { PolyhedralDomain::from_vertices(with_inner); }) == ErrorKind::invalid_domain);
  CHECK(PolyhedralDomain::hull_of(with_inner).vertices().size() == 3);

  const PointSet collinear(2, { 0, 0, 1, 1, 2, 2 });
  CHECK(kind_of([&] { PolyhedralDomain::from_vertices(collinear); }) == ErrorKind::invalid_domain);
}

TEST_CASE("uniform grids")
{
  const auto g = uniform_grid(make_box_domain({ 0.0 }, { 1.0 }), 5);
  CHECK(g.points() == PointSet(1, { 0, 0.25, 0.5, 0.75, 1 }));
  CHECK(g.mesh() == doctest::Approx(0.25));

  const auto corners = uniform_grid(make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 }), 2);
  CHECK(corners.size() == 4);
  CHECK(corners.mesh() == doctest::Approx(std::sqrt(2.0)));

  const auto g11 = uniform_grid(make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 }), 11);
  CHECK(g11.size() == 121);
  CHECK(g11.mesh() == doctest::Approx(0.14142).epsilon(1e-4));

  CHECK(kind_of([] { uniform_grid(make_box_domain({ 0.0 }, { 1.0 }), 1); }) ==
        ErrorKind::invalid_grid);
  const auto tri = PolyhedralDomain::from_vertices(PointSet(2, { 0, 0, 1, 0, 0, 1 }));
  CHECK(kind_of([&] { uniform_grid(tri, 5); }) == ErrorKind::invalid_grid);
}

TEST_CASE("lower hull examples")
{
  const auto flat = lower_hull(PointSet(1, { 0, 0.5, 1 }), std::vector<double>{ 0, 1, 0 });
  REQUIRE(flat.pieces().size() == 1);
  CHECK(flat.pieces()[0].gradient[0] == doctest::Approx(0.0));
  CHECK(flat.pieces()[0].offset == doctest::Approx(0.0));
  CHECK(at(flat, { 0.5 }) == doctest::Approx(0.0));

  const auto vee = lower_hull(PointSet(1, { 0, 0.5, 1 }), std::vector<double>{ 1, 0, 1 });
  CHECK(vee.pieces().size() == 2);
  CHECK(at(vee, { 0.25 }) == doctest::Approx(0.5));
  CHECK(at(vee, { 0.5 }) == doctest::Approx(0.0));
  CHECK(at(vee, { 0.75 }) == doctest::Approx(0.5));

  const auto square =
    lower_hull(PointSet(2, { 0, 0, 1, 0, 0, 1, 1, 1 }), std::vector<double>{ 0, 0, 0, 1 });
  CHECK(at(square, { 0.5, 0.5 }) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lower hull errors and degenerate inputs")
{
  CHECK(kind_of([] { lower_hull(PointSet(2, { 0, 0, 1, 1, 2, 2 }), std::vector<double>{ 0, 1, 2 }); }) ==
        ErrorKind::degenerate_geometry);
  CHECK(kind_of([] { lower_hull(PointSet(1, { 0, 0 }), std::vector<double>{ 1, 2 }); }) ==
        ErrorKind::degenerate_geometry);
  CHECK(kind_of([] { lower_hull(PointSet(1, { 0, 1 }), std::vector<double>{ 0, NAN }); }) ==
        ErrorKind::invalid_input);

  // Duplicates keep the minimum value.
  const auto dup = lower_hull(PointSet(1, { 0, 0.5, 0.5, 1 }), std::vector<double>{ 1, 3, -1, 1 });
  CHECK(at(dup, { 0.5 }) == doctest::Approx(-1.0));

  // Flat lifted data gives one piece.
  const auto grid = uniform_grid(make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 }), 6);
  std::vector<double> plane;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    plane.push_back(3.0 * grid.points()[i][0] + grid.points()[i][1] - 0.5);
  }
  const auto env = lower_hull(grid.points(), plane);
  CHECK(env.pieces().size() == 1);
  CHECK(at(env, { 0.3, 0.7 }) == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("evaluate")
{
  const auto zero = ConvexEnvelope({ AffinePiece{ { 0.0 }, 0.0 } }, make_box_domain({ 0.0 }, { 1.0 }));
  CHECK(at(zero, { 0.3 }) == 0.0);

  const auto two = ConvexEnvelope({ AffinePiece{ { -2.0 }, 1.0 }, AffinePiece{ { 2.0 }, -1.0 } },
                                  make_box_domain({ -1.0 }, { 1.0 }));
  CHECK(at(two, { 0.0 }) == 1.0);

  CHECK(kind_of([&] { at(two, { 1.5 }); }) == ErrorKind::out_of_domain);
  CHECK(at(two, { 1.5 }, true) == doctest::Approx(2.0));

  const auto concave = two.with_shape(Shape::concave);
  CHECK(at(concave, { 0.0 }) == -1.0);
}

TEST_CASE("convex combination cover examples")
{
  const auto line = explicit_grid(make_box_domain({ 0.0 }, { 1.0 }), PointSet(1, { 0, 0.5, 1 }));
  auto mid = convex_combination_cover(line, std::vector<double>{ 0.25 });
  REQUIRE(mid.size() == 2);
  std::sort(mid.begin(), mid.end(), [](auto& a, auto& b) { return a.point < b.point; });
  CHECK(mid[0].point[0] == 0.0);
  CHECK(mid[0].weight == doctest::Approx(0.5));
  CHECK(mid[1].point[0] == 0.5);
  CHECK(mid[1].weight == doctest::Approx(0.5));

  const auto on = convex_combination_cover(line, std::vector<double>{ 0.5 });
  REQUIRE(on.size() == 1);
  CHECK(on[0].point[0] == 0.5);
  CHECK(on[0].weight == doctest::Approx(1.0));

  const auto sq = uniform_grid(make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 }), 2);
  const auto terms = convex_combination_cover(sq, std::vector<double>{ 0.25, 0.25 });
  REQUIRE(terms.size() == 3);
  std::vector<double> w;
  for (const auto& t : terms) {
    w.push_back(t.weight);
  }
  std::sort(w.begin(), w.end());
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.25));
  CHECK(w[2] == doctest::Approx(0.5));

  CHECK(kind_of([&] { convex_combination_cover(sq, std::vector<double>{ 1.5, 0.0 }); }) ==
        ErrorKind::out_of_domain);
}

TEST_CASE("envelope oracle examples")
{
  CHECK(envelope_oracle(PointSet(1, { 0, 1 }), std::vector<double>{ 0, 0 }, std::vector<double>{ 0.5 }) ==
        doctest::Approx(0.0));
  CHECK(envelope_oracle(PointSet(1, { 0, 0.5, 1 }), std::vector<double>{ 1, 0, 1 },
                        std::vector<double>{ 0.25 }) == doctest::Approx(0.5));
  CHECK(envelope_oracle(PointSet(1, { 0, 0.5, 1 }), std::vector<double>{ 0, -1, 0 },
                        std::vector<double>{ 0.5 }) == doctest::Approx(-1.0));
  CHECK(kind_of([] {
          envelope_oracle(PointSet(1, { 0, 1 }), std::vector<double>{ 0, 0 }, std::vector<double>{ 2.0 });
        }) == ErrorKind::out_of_domain);
}

TEST_CASE("lower hull agrees with the brute-force oracle")
{
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(3, 10);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = trial % 2 == 0 ? 1 : 2;
    const std::size_t n = static_cast<std::size_t>(count(rng));
    PointSet xs(d);
    std::vector<double> v;
    std::vector<double> p(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& c : p) {
        c = u(rng);
      }
      xs.push_back(p);
      v.push_back(u(rng) * 2.0 - 1.0);
    }
    ConvexEnvelope env;
    try {
      env = lower_hull(xs, v);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate_geometry);
      continue;
    }
    for (int q = 0; q < 10; ++q) {
      // Query at random convex combinations of the samples.
      std::vector<double> x(d, 0.0);
      double total = 0.0;
      std::vector<double> w(n);
      for (auto& wi : w) {
        wi = u(rng);
        total += wi;
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
          x[k] += w[i] / total * xs[i][k];
        }
      }
      CHECK(std::abs(env.evaluate(x) - envelope_oracle(xs, v, x)) <= 1e-8);
      ++checked;
    }
  }
  CHECK(checked > 1500);
}

TEST_CASE("envelope invariants on noisy grids")
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0.0, 0.1);
  for (const std::size_t d : { 1u, 2u }) {
    const auto domain = d == 1 ? make_box_domain({ 0.0 }, { 1.0 }) : make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 });
    const auto grid = uniform_grid(domain, d == 1 ? 101 : 21);
    std::vector<double> v;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double r2 = 0.0;
      for (const double c : grid.points()[i]) {
        r2 += (c - 0.4) * (c - 0.4);
      }
      v.push_back(r2 + z(rng));
    }
    const auto env = lower_hull(grid.points(), v);

    // Convexity.
    CHECK(testing::convexity_defect(env, 1000, 5 + d) <= 1e-9);

    // Membership: phi <= f_n at every grid point.
    double lemma = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      lemma = std::max(lemma, env.evaluate(grid.points()[i]) - v[i]);
    }
    CHECK(lemma <= 1e-9);

    // Minimality: every facet vertex is touched.
    for (const auto& f : env.facets()) {
      for (const auto idx : f) {
        CHECK(std::abs(env.evaluate(env.support()[idx]) - env.support_values()[idx]) <= 1e-9);
      }
    }

    // Idempotence.
    const auto again = lower_hull(grid.points(), evaluate_many(env, grid.points()));
    const auto test = uniform_grid(domain, d == 1 ? 1001 : 101);
    double sup = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      sup = std::max(sup, std::abs(env.evaluate(test.points()[i]) - again.evaluate(test.points()[i])));
    }
    CHECK(sup <= 1e-9);

    // Parallel evaluation matches the serial reference exactly.
    CHECK(evaluate_many(env, test.points()) == evaluate_many_serial(env, test.points()));
  }
}

TEST_CASE("cover invariants")
{
  std::mt19937_64 rng(9);
  const auto box = make_box_domain({ 0.0, 0.0 }, { 2.0, 1.0 });
  const auto tri = PolyhedralDomain::from_vertices(PointSet(2, { 0, 0, 1, 0, 0.3, 0.9 }));
  for (const auto& grid : { uniform_grid(box, 7), lattice_grid(tri, 9),
                            uniform_grid(make_box_domain({ -1.0 }, { 3.0 }), 9) }) {
    for (int q = 0; q < 500; ++q) {
      const auto x = testing::random_point_in(grid.domain(), rng);
      const auto terms = convex_combination_cover(grid, x);
      CHECK(terms.size() <= grid.domain().dim() + 1);
      double total = 0.0;
      std::vector<double> rebuilt(x.size(), 0.0);
      for (const auto& t : terms) {
        CHECK(t.weight >= 0.0);
        CHECK(distance(t.point, x) <= grid.mesh() + 1e-12);
        total += t.weight;
        for (std::size_t k = 0; k < x.size(); ++k) {
          rebuilt[k] += t.weight * t.point[k];
        }
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(distance(rebuilt, x) <= 1e-12);
    }
  }
}

TEST_CASE("non-box domains keep every vertex in the grid")
{
  const auto tri = PolyhedralDomain::from_vertices(PointSet(2, { 0, 0, 1, 0, 0.3, 0.9 }));
  const auto grid = lattice_grid(tri, 12);
  for (std::size_t v = 0; v < tri.vertices().size(); ++v) {
    bool found = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      found = found || distance(grid.points()[i], tri.vertices()[v]) == 0.0;
    }
    CHECK(found);
  }
  CHECK(kind_of([&] { explicit_grid(tri, PointSet(2, { 0, 0, 1, 0, 0.2, 0.2 })); }) ==
        ErrorKind::invalid_grid);
}
