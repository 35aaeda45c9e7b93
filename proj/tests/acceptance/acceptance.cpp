// End-to-end acceptance checks. Prints one [PASS]/[FAIL] line per criterion
// and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "convexreg/bands/bands.hpp"
#include "convexreg/cli/cli.hpp"
#include "convexreg/error.hpp"
#include "convexreg/geometry/envelope.hpp"
#include "convexreg/io/atomic_write.hpp"
#include "convexreg/io/csv.hpp"
#include "convexreg/io/envelope_json.hpp"
#include "convexreg/pipeline/diagnostics.hpp"
#include "convexreg/pipeline/rate_check.hpp"
#include "convexreg/sim/moments.hpp"
#include "convexreg/sim/simulation.hpp"
#include "convexreg/smoothing/bandwidth.hpp"
#include "convexreg/smoothing/kernel.hpp"
#include "convexreg/smoothing/smoother.hpp"
#include "oracles/envelope_oracle.hpp"
#include "support/properties.hpp"

using namespace convexreg;
using geometry::PointSet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail)
{
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " C" << id << " " << detail << std::endl;
  failures += pass ? 0 : 1;
}

double seconds_since(Clock::time_point t)
{
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Envelopes gathered for the convexity suite.
std::vector<geometry::ConvexEnvelope> collected;

void criterion_theorem_band()
{
  bool pass = true;
  std::string detail;
  for (const auto& [name, L] : std::vector<std::pair<std::string, double>>{
         { "f1", 3.0 }, { "f2", 8.0 / 3.0 }, { "f3", 4.0 } }) {
    const auto start = Clock::now();
    sim::SimSpec spec;
    spec.function = sim::TestFunction::named(name);
    spec.n = 1000;
    spec.sigma = 0.0;
    spec.seed = 101;
    spec.pipeline.smoother.settings.kind = smoothing::SmootherKind::moving_window;
    spec.pipeline.smoother.bandwidth = smoothing::tran_bandwidth(1000, 1);
    spec.pipeline.grid.per_axis = 201;
    const auto fit =
      pipeline::fit_convex_detailed(sim::simulate_dataset(spec, 0), sim::resolved_pipeline(spec));
    const auto f = spec.function;
    const auto r =
      pipeline::check_theorem1([&](std::span<const double> x) { return f(x); }, fit, L, 1e-9);
    const double t = seconds_since(start);
    const bool ok = r.theorem_holds() && r.test_points == 1001 && t < 5.0;
    pass = pass && ok;
    detail += fmt::format("{}: phi-f in [{:.4g}, {:.4g}] within [{:.4g}, {:.4g}] ({:.2f}s); ", name,
                          r.observed_min, r.observed_max, r.bound_lo, r.bound_hi, t);
    collected.push_back(fit.envelope);
  }
  report(1, pass, "noiseless error band, n=1000, m=201: " + detail);
}

void criterion_oracle()
{
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  std::size_t instances = 0;
  while (instances < 200) {
    const std::size_t d = 1 + instances % 2;
    const std::size_t n = d + 1 + rng() % (10 - d);
    PointSet xs(d);
    std::vector<double> vs;
    std::vector<double> p(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& c : p) {
        c = u(rng);
      }
      xs.push_back(p);
      vs.push_back(2.0 * u(rng) - 1.0);
    }
    geometry::ConvexEnvelope env;
    try {
      env = geometry::lower_hull(xs, vs);
    } catch (const Error&) {
      continue; // affinely dependent draw; redraw
    }
    for (int q = 0; q < 50; ++q) {
      const auto x = testing::random_point_in(env.domain(), rng);
      worst = std::max(worst, std::abs(env.evaluate(x) - testing::envelope_oracle(xs, vs, x)));
    }
    collected.push_back(env);
    ++instances;
  }
  const double t = seconds_since(start);
  report(2, worst <= 1e-8 && t < 10.0,
         fmt::format("oracle equivalence on 200 instances: max |diff| = {:.3g} ({:.2f}s)", worst, t));
}

void criterion_convexity()
{
  sim::SimSpec spec;
  spec.replications = 20;
  spec.seed = 303;
  std::vector<geometry::ConvexEnvelope> mini(spec.replications);
  sim::MomentOptions options;
  options.on_replication = [&](std::size_t r, const pipeline::ConvexFit& fit) { mini[r] = fit.envelope; };
  sim::moment_study(spec, options);
  collected.insert(collected.end(), mini.begin(), mini.end());
  double worst = -INFINITY;
  for (std::size_t i = 0; i < collected.size(); ++i) {
    worst = std::max(worst, testing::convexity_defect(collected[i], 1000, i + 1));
  }
  report(3, worst <= 1e-9,
         fmt::format("midpoint convexity over {} envelopes x 1000 triples: max defect = {:.3g}",
                     collected.size(), worst));
}

void criterion_reproduction()
{
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (const std::size_t d : { 1, 2 }) {
    PointSet xs(d);
    std::vector<double> affine;
    std::vector<double> quadratic;
    std::vector<double> p(d);
    auto lin = [](std::span<const double> x) {
      double v = 0.7;
      for (std::size_t k = 0; k < x.size(); ++k) {
        v += (1.5 - static_cast<double>(k)) * x[k];
      }
      return v;
    };
    auto quad = [](std::span<const double> x) {
      double v = -0.2 + x[0] - 2.0 * x[0] * x[0];
      if (x.size() > 1) {
        v += 0.5 * x[1] + x[0] * x[1] + 1.5 * x[1] * x[1];
      }
      return v;
    };
    for (int i = 0; i < 100; ++i) {
      for (auto& c : p) {
        c = u(rng);
      }
      xs.push_back(p);
      affine.push_back(lin(p));
      quadratic.push_back(quad(p));
    }
    const auto a = smoothing::make_dataset(xs, affine);
    const auto q = smoothing::make_dataset(xs, quadratic);
    for (const double h : { 0.1, 0.2, 0.4, 0.8, 2.0 }) {
      const auto f1 = smoothing::fit_local_poly(a, smoothing::Kernel(), h, 1);
      const auto f2 = smoothing::fit_local_poly(q, smoothing::Kernel(), h, 2);
      for (int k = 0; k < 200; ++k) {
        for (auto& c : p) {
          c = u(rng);
        }
        worst1 = std::max(worst1, std::abs(f1(p) - lin(p)));
        worst2 = std::max(worst2, std::abs(f2(p) - quad(p)));
      }
    }
  }
  report(4, worst1 <= 1e-8 && worst2 <= 1e-8,
         fmt::format("local-poly reproduction, 5 bandwidths, d=1,2: degree 1 err {:.3g}, degree 2 err {:.3g}",
                     worst1, worst2));
}

void criterion_moments()
{
  const auto start = Clock::now();
  sim::SimSpec spec;
  spec.function = sim::TestFunction::named("f2");
  spec.n = 100;
  spec.sigma = 0.1;
  spec.replications = 200;
  spec.seed = 505;
  const auto s = sim::moment_study(spec).estimator;
  double max_mse = 0.0;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const double x = s.points[i][0];
    if (x >= 0.1 - 1e-12 && x <= 0.9 + 1e-12) {
      max_mse = std::max(max_mse, s.mse[i]);
    }
  }
  const double decomposition = s.max_decomposition_error();
  const double t = seconds_since(start);
  report(5, decomposition <= 1e-10 && max_mse < 0.05 && t < 120.0,
         fmt::format("f2 moment study R=200: |mse-(var+bias2)| <= {:.3g}, max mse on [0.1,0.9] = {:.4g} ({:.1f}s)",
                     decomposition, max_mse, t));
}

struct SurfaceSummary
{
  double max_variance = 0.0;
  double max_bias2 = 0.0;
  double seconds = 0.0;
};

// Interior: at least 10% of the side length away from the boundary.
SurfaceSummary f2d_surface(const geometry::PolyhedralDomain& domain)
{
  const auto start = Clock::now();
  sim::SimSpec spec;
  spec.function = sim::TestFunction::named("f2d");
  spec.design = sim::Design::lattice;
  spec.n = 20;
  spec.sigma = 0.1;
  spec.replications = 200;
  spec.seed = 606;
  spec.domain = domain;
  spec.pipeline.grid.per_axis = 20;
  const auto s = sim::moment_study(spec).estimator;
  SurfaceSummary out;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    bool interior = true;
    for (std::size_t k = 0; k < 2; ++k) {
      const double margin = 0.1 * (domain.upper()[k] - domain.lower()[k]);
      interior = interior && s.points[i][k] >= domain.lower()[k] + margin &&
                 s.points[i][k] <= domain.upper()[k] - margin;
    }
    if (interior) {
      out.max_variance = std::max(out.max_variance, s.variance[i]);
      out.max_bias2 = std::max(out.max_bias2, s.bias2[i]);
    }
  }
  out.seconds = seconds_since(start);
  return out;
}

void criterion_surface()
{
  const auto main = f2d_surface(sim::TestFunction::named("f2d").default_domain());
  const auto unit = f2d_surface(geometry::make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 }));
  report(6, main.max_variance < main.max_bias2 && main.seconds < 600.0,
         fmt::format("f2d 20x20 R=200 on [-1,1]^2: interior max var {:.3g} vs max bias2 {:.3g}, ratio {:.3f} ({:.1f}s); "
                     "on [0,1]^2 (f2d affine there, informational): ratio {:.3f}",
                     main.max_variance, main.max_bias2, main.max_variance / main.max_bias2, main.seconds,
                     unit.max_variance / unit.max_bias2));
}

void criterion_band_constants()
{
  const double c = bands::critical_constant(0.05);
  const double independent = std::log(2.0) - std::log(std::abs(std::log(0.95)));
  const bool c_ok = std::abs(c - independent) <= 5e-4 && std::abs(c - 3.6633) <= 5e-4;

  // Simpson's rule is exact for the quartic (K^2) on [-1, 1].
  const smoothing::Kernel epan(smoothing::KernelType::epanechnikov);
  const int m = 2000;
  const double step = 2.0 / m;
  double integral = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double x = -1.0 + i * step;
    const double k = epan(std::span<const double>(&x, 1));
    integral += (i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0)) * k * k;
  }
  integral *= step / 3.0;
  const bool k_ok = std::abs(integral - 0.6) <= 1e-10;

  bool widths_ok = true;
  std::string widths;
  for (const char* name : { "f1", "f2", "f3" }) {
    sim::SimSpec spec;
    spec.function = sim::TestFunction::named(name);
    spec.seed = 707;
    const auto data = sim::simulate_dataset(spec, 0);
    const auto eval = pipeline::dense_test_grid(spec.resolved_domain());
    const auto band = bands::convexified_band(data, bands::BandConfig{}, eval.coords());
    widths_ok = widths_ok && band.width() >= 0.05 && band.width() <= 0.5;
    widths += fmt::format(" {}={:.4f}", name, band.width());
  }
  report(7, c_ok && k_ok && widths_ok,
         fmt::format("c(0.05) = {:.6f} (independent {:.6f}), int K^2 = {:.12f}, band widths:{}", c,
                     independent, integral, widths));
}

void criterion_coverage()
{
  const auto start = Clock::now();
  sim::SimSpec spec;
  spec.function = sim::TestFunction::named("f2");
  spec.seed = 808;
  std::vector<double> eval;
  for (int i = 0; i <= 80; ++i) {
    eval.push_back(0.1 + i * 0.01);
  }
  const std::size_t reps = 200;
  std::size_t covered = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto band = bands::convexified_band(sim::simulate_dataset(spec, r), bands::BandConfig{}, eval);
    bool inside = true;
    for (std::size_t i = 0; i < eval.size() && inside; ++i) {
      const double f = sim::f2(eval[i]);
      inside = band.lower(i) <= f && f <= band.upper(i);
    }
    covered += inside;
  }
  const double fraction = static_cast<double>(covered) / static_cast<double>(reps);
  report(8, fraction >= 0.85,
         fmt::format("f2 band coverage on [0.1,0.9] over 200 replications: {:.3f} ({:.1f}s)", fraction,
                     seconds_since(start)));
}

void criterion_rate()
{
  const auto start = Clock::now();
  pipeline::RateCheckConfig config;
  config.f_true = [](std::span<const double> x) { return sim::f1(x[0]); };
  config.domain = geometry::make_box_domain({ 0.0 }, { 1.0 });
  config.n_list = { 100, 400, 1600, 6400 };
  config.replications = 20;
  config.seed = 909;
  config.sigma = 0.1;
  const auto r = pipeline::empirical_rate_check(config);
  std::string rows;
  for (const auto& row : r.rows) {
    rows += fmt::format(" n={}:{:.4f}", row.n, row.mean_sup_error);
  }
  const double t = seconds_since(start);
  report(9, r.decreases >= 2 && t < 300.0,
         fmt::format("rate trend, {} of 3 pairs decrease, mean sup error{} ({:.1f}s)", r.decreases, rows, t));
}

void criterion_round_trip()
{
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointSet xs(2);
  std::vector<double> vs;
  for (int i = 0; i < 200; ++i) {
    const double p[2] = { u(rng), u(rng) };
    xs.push_back(p);
    vs.push_back(sim::f2d(p[0], p[1]) + 0.1 * u(rng));
  }
  geometry::HullOptions options;
  options.domain = geometry::make_box_domain({ -1.0, -1.0 }, { 1.0, 1.0 });
  bool exact = true;
  for (const auto shape : { geometry::Shape::convex, geometry::Shape::concave }) {
    const auto env = geometry::lower_hull(xs, vs, options).with_shape(shape);
    const auto back = io::envelope_from_json(io::envelope_to_json(env));
    for (int i = 0; i < 1000; ++i) {
      const double p[2] = { u(rng), u(rng) };
      exact = exact && back.evaluate(p) == env.evaluate(p);
    }
  }

  const fs::path dir = fs::temp_directory_path() / "convexreg_acceptance_replay";
  fs::remove_all(dir);
  std::string text = "x,y\n";
  for (int i = 0; i < 100; ++i) {
    const double x = (u(rng) + 1.0) / 2.0;
    text += io::format_double(x) + "," + io::format_double(sim::f2(x) + 0.1 * u(rng)) + "\n";
  }
  io::write_file_atomic(dir / "data.csv", text);
  std::ostringstream out;
  std::ostringstream err;
  const int fit = cli::run({ "fit", "--input", (dir / "data.csv").string(), "--out", (dir / "a").string() },
                           out, err);
  const int replay = cli::run(
    { "replay", "--manifest", (dir / "a" / "manifest.json").string(), "--out", (dir / "b").string() }, out, err);
  const bool identical = fit == 0 && replay == 0 &&
                         io::read_file(dir / "a" / "envelope.json") == io::read_file(dir / "b" / "envelope.json") &&
                         io::read_file(dir / "a" / "curve.csv") == io::read_file(dir / "b" / "curve.csv");
  report(10, exact && identical,
         fmt::format("JSON round-trip bit-exact at 1000 points: {}; manifest replay byte-identical: {}",
                     exact ? "yes" : "no", identical ? "yes" : "no"));
}

} // namespace

int main()
{
  const std::vector<std::function<void()>> criteria = {
    criterion_theorem_band, criterion_oracle,          criterion_convexity,
    criterion_reproduction, criterion_moments,         criterion_surface,
    criterion_band_constants, criterion_coverage,      criterion_rate,
    criterion_round_trip,
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : fmt::format("{} criteria failed", failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
