#include "convexreg/sim/figures.hpp"

#include <chrono>

#include <fmt/format.h>

#include "convexreg/bands/bands.hpp"
#include "convexreg/error.hpp"
#include "convexreg/io/atomic_write.hpp"
#include "convexreg/io/csv.hpp"
#include "convexreg/io/manifest.hpp"
#include "convexreg/pipeline/diagnostics.hpp"
#include "convexreg/sim/moments.hpp"

namespace convexreg::sim {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kFunctions1d = { "f1", "f2", "f3" };
const std::vector<std::size_t> kLattices2d = { 10, 20 };

SimSpec spec_1d(const std::string& name, std::uint64_t seed, std::size_t reps)
{
  SimSpec spec;
  spec.function = TestFunction::named(name);
  spec.n = 100;
  spec.sigma = 0.1;
  spec.replications = reps;
  spec.seed = seed;
  return spec;
}

SimSpec spec_2d(std::size_t m, const FigureOptions& options, std::size_t reps)
{
  SimSpec spec;
  spec.function = TestFunction::named("f2d");
  spec.design = Design::lattice;
  spec.n = m;
  spec.sigma = 0.1;
  spec.replications = reps;
  spec.seed = options.seed + m;
  spec.domain = options.domain2d;
  spec.pipeline.grid.per_axis = m;
  return spec;
}

std::vector<double> coordinate(const geometry::PointSet& pts, std::size_t k)
{
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out[i] = pts[i][k];
  }
  return out;
}

std::vector<std::string> coordinate_names(std::size_t d)
{
  if (d == 1) {
    return { "x" };
  }
  std::vector<std::string> out;
  for (std::size_t k = 0; k < d; ++k) {
    out.push_back("x" + std::to_string(k + 1));
  }
  return out;
}

struct Writer
{
  fs::path root;
  std::vector<fs::path> files;

  void csv(const fs::path& rel, std::vector<std::string> header,
           const std::vector<std::vector<double>>& columns,
           const std::vector<std::string>& comments = {})
  {
    const fs::path path = root / rel;
    io::write_file_atomic(path, io::format_csv(header, columns, comments));
    files.push_back(path);
  }
};

// One file per run with the truth, the raw smoother and the estimate.
void regression_runs(Writer& w, const SimSpec& spec, const std::string& prefix, std::size_t runs)
{
  const auto config = resolved_pipeline(spec);
  const auto eval = pipeline::dense_test_grid(spec.resolved_domain());
  const std::size_t d = eval.dim();
  for (std::size_t r = 0; r < runs; ++r) {
    const auto data = simulate_dataset(spec, r);
    const auto fit = pipeline::fit_convex_detailed(data, config);
    std::vector<std::vector<double>> cols;
    for (std::size_t k = 0; k < d; ++k) {
      cols.push_back(coordinate(eval, k));
    }
    std::vector<double> truth(eval.size());
    std::vector<double> smooth(eval.size());
    for (std::size_t i = 0; i < eval.size(); ++i) {
      truth[i] = spec.function(eval[i]);
      smooth[i] = fit.smoother.evaluate(eval[i]).value;
    }
    cols.push_back(std::move(truth));
    cols.push_back(std::move(smooth));
    cols.push_back(geometry::evaluate_many(fit.envelope, eval, true));
    auto header = coordinate_names(d);
    header.insert(header.end(), { "truth", "smoother", "estimate" });
    w.csv(fs::path(spec.function.name()) / fmt::format("{}run{}.csv", prefix, r + 1), header, cols);
  }
}

void moment_file(Writer& w, const SimSpec& spec, const fs::path& rel, bool with_smoother)
{
  MomentOptions options;
  options.include_smoother = with_smoother;
  const auto result = moment_study(spec, options);
  const auto& s = result.estimator;
  const std::size_t d = s.points.dim();
  std::vector<std::vector<double>> cols;
  for (std::size_t k = 0; k < d; ++k) {
    cols.push_back(coordinate(s.points, k));
  }
  cols.insert(cols.end(), { s.truth, s.variance, s.bias2, s.mse });
  auto header = coordinate_names(d);
  header.insert(header.end(), { "truth", "variance", "bias2", "mse" });
  if (result.smoother) {
    const auto& m = *result.smoother;
    cols.insert(cols.end(), { m.variance, m.bias2, m.mse });
    header.insert(header.end(), { "smoother_variance", "smoother_bias2", "smoother_mse" });
  }
  w.csv(rel, header, cols);
}

void band_file(Writer& w, const SimSpec& spec)
{
  const auto data = simulate_dataset(spec, 0);
  const auto eval = pipeline::dense_test_grid(spec.resolved_domain());
  const auto xs = coordinate(eval, 0);
  const bands::BandConfig config;
  const auto band = bands::convexified_band(data, config, xs);
  std::vector<double> lower(band.size());
  std::vector<double> upper(band.size());
  for (std::size_t i = 0; i < band.size(); ++i) {
    lower[i] = band.lower(i);
    upper[i] = band.upper(i);
  }
  const auto& c = band.constants;
  const std::vector<std::string> comments = {
    "band width: " + io::format_double(band.width()),
    fmt::format("alpha={} c_alpha={} delta={} d_n={} kappa={} n={} h_n={} int_K2={} kernel={} "
                "second_moment={} unreliable_within={}",
                io::format_double(c.alpha), io::format_double(c.c_alpha),
                io::format_double(c.delta_exponent), io::format_double(c.d_n),
                io::format_double(c.drift_correction), io::format_double(c.n),
                io::format_double(c.bandwidth), io::format_double(c.kernel_sq_integral), c.kernel,
                c.second_moment_method, io::format_double(c.support_radius * c.bandwidth)),
  };
  w.csv(fs::path(spec.function.name()) / "band.csv", { "x", "center", "lower", "upper", "halfwidth" },
        { xs, band.centers, lower, upper, band.halfwidths }, comments);
}

} // namespace

std::vector<std::string> study_ids()
{
  return { "regression1d", "varbiasmse1d", "confidence", "regression2d", "varbiasmse2d" };
}

nlohmann::ordered_json spec_to_json(const SimSpec& spec)
{
  nlohmann::ordered_json j;
  j["function"] = spec.function.name();
  j["design"] = spec.design == Design::lattice ? "lattice" : "uniform-random";
  j["n"] = spec.n;
  j["sigma"] = spec.sigma;
  j["replications"] = spec.replications;
  j["seed"] = spec.seed;
  j["fixed_design"] = spec.fixed_design;
  auto vertices = nlohmann::ordered_json::array();
  const auto& v = spec.resolved_domain().vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    vertices.push_back(std::vector<double>(v[i].begin(), v[i].end()));
  }
  j["domain"] = vertices;
  const auto& s = spec.pipeline.smoother;
  j["smoother"] = { { "kind", std::string(smoothing::to_string(s.settings.kind)) },
                    { "kernel", std::string(s.settings.kernel.name()) },
                    { "degree", s.settings.degree },
                    { "bandwidth", s.bandwidth ? nlohmann::ordered_json(*s.bandwidth)
                                               : nlohmann::ordered_json("cv") } };
  j["grid_per_axis"] = spec.pipeline.grid.per_axis;
  return j;
}

FigureResult reproduce_figure(std::string_view study, const FigureOptions& options)
{
  const auto ids = study_ids();
  if (std::find(ids.begin(), ids.end(), study) == ids.end()) {
    fail(ErrorKind::usage, "unknown study '" + std::string(study) +
                             "' (expected regression1d, varbiasmse1d, confidence, "
                             "regression2d or varbiasmse2d)");
  }
  const auto started = std::chrono::steady_clock::now();
  Writer w{ options.out_dir / std::string(study), {} };
  auto specs = nlohmann::ordered_json::array();

  if (study == "regression1d" || study == "varbiasmse1d" || study == "confidence") {
    const std::size_t default_reps = study == "regression1d" ? 5 : study == "confidence" ? 1 : 2000;
    for (const auto& name : kFunctions1d) {
      SimSpec spec = spec_1d(name, options.seed, options.replications.value_or(default_reps));
      specs.push_back(spec_to_json(spec));
      if (study == "regression1d") {
        regression_runs(w, spec, "", spec.replications);
      } else if (study == "varbiasmse1d") {
        moment_file(w, spec, fs::path(name) / "moments.csv", true);
      } else {
        band_file(w, spec);
      }
    }
  } else {
    const std::size_t default_reps = study == "regression2d" ? 2 : 2000;
    for (const auto m : kLattices2d) {
      SimSpec spec = spec_2d(m, options, options.replications.value_or(default_reps));
      specs.push_back(spec_to_json(spec));
      if (study == "regression2d") {
        regression_runs(w, spec, fmt::format("m{}_", m), spec.replications);
      } else {
        moment_file(w, spec, fs::path("f2d") / fmt::format("m{}_moments.csv", m), false);
      }
    }
  }

  io::RunManifest manifest;
  manifest.command = options.command;
  manifest.args = options.args;
  manifest.config = { { "study", std::string(study) }, { "specs", specs } };
  manifest.seed = options.seed;
  for (const auto& f : w.files) {
    manifest.outputs.push_back(io::record_output(w.root, f));
  }
  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  manifest.timings = { { "total_seconds", seconds } };
  const fs::path manifest_path = w.root / "manifest.json";
  io::write_file_atomic(manifest_path, io::manifest_to_json(manifest));
  return { std::string(study), w.files, manifest_path };
}

} // namespace convexreg::sim
