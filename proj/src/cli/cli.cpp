#include "convexreg/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "convexreg/bands/bands.hpp"
#include "convexreg/error.hpp"
#include "convexreg/io/atomic_write.hpp"
#include "convexreg/io/csv.hpp"
#include "convexreg/io/envelope_json.hpp"
#include "convexreg/io/manifest.hpp"
#include "convexreg/pipeline/diagnostics.hpp"
#include "convexreg/pipeline/pipeline.hpp"
#include "convexreg/sim/figures.hpp"

namespace convexreg::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::vector<std::string> split_list(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

double seconds_since(Clock::time_point t)
{
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::vector<double> column(const geometry::PointSet& pts, std::size_t k)
{
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out[i] = pts[i][k];
  }
  return out;
}

std::vector<std::string> coordinate_names(const std::vector<std::string>& x_cols)
{
  return x_cols;
}

struct FitArgs
{
  std::string input;
  std::string x_cols = "x";
  std::string y_col = "y";
  std::string shape = "convex";
  std::string smoother = "localpoly";
  int degree = 1;
  std::string kernel = "gaussian";
  std::string bandwidth = "cv";
  std::size_t grid = 100;
  std::string domain = "box";
  std::string sampling = "strict";
  bool extend = false;
  std::string out;
};

struct BandArgs
{
  std::string input;
  std::string x_cols = "x";
  std::string y_col = "y";
  double alpha = 0.05;
  double delta = 0.3;
  double drift = 0.0;
  std::string kernel = "epanechnikov";
  std::string center = "convex";
  std::size_t eval_points = 1001;
  std::size_t grid = 101;
  std::string out;
};

struct SimulateArgs
{
  std::string study;
  std::optional<std::size_t> reps;
  std::uint64_t seed = 1;
  std::string domain2d;
  std::string out = ".";
};

struct ReplayArgs
{
  std::string manifest;
  std::string out;
};

fs::path fit_command(const FitArgs& a, const std::vector<std::string>& argv, std::ostream& out)
{
  const auto started = Clock::now();
  const auto x_cols = split_list(a.x_cols);
  auto data = io::read_csv(a.input, x_cols, a.y_col);
  if (a.domain == "hull") {
    data.domain = geometry::PolyhedralDomain::hull_of(data.xs);
  } else if (a.domain != "box") {
    fail(ErrorKind::usage, "--domain must be box or hull");
  }

  pipeline::PipelineConfig config;
  if (a.shape == "concave") {
    config.shape = geometry::Shape::concave;
  } else if (a.shape != "convex") {
    fail(ErrorKind::usage, "--shape must be convex or concave");
  }
  config.smoother.settings.kind = smoothing::smoother_kind_from_name(a.smoother);
  config.smoother.settings.kernel = smoothing::Kernel::from_name(a.kernel);
  config.smoother.settings.degree = a.degree;
  if (a.bandwidth != "cv") {
    double h = 0.0;
    try {
      std::size_t used = 0;
      h = std::stod(a.bandwidth, &used);
      if (used != a.bandwidth.size()) {
        throw std::invalid_argument("trailing characters");
      }
    } catch (const std::exception&) {
      fail(ErrorKind::usage, "--bandwidth must be a positive number or 'cv'");
    }
    config.smoother.bandwidth = h;
  }
  config.grid.per_axis = a.grid;
  if (a.sampling == "lenient") {
    config.sampling = smoothing::SamplingPolicy::lenient;
  } else if (a.sampling != "strict") {
    fail(ErrorKind::usage, "--sampling must be strict or lenient");
  }

  const auto fit = pipeline::fit_convex_detailed(data, config);
  const fs::path dir(a.out);
  const fs::path env_path = dir / "envelope.json";
  io::write_envelope(env_path, fit.envelope);

  // Curve on the dense lattice of the domain, or of its bounding box when
  // the envelope is extended.
  const auto& domain = fit.grid.domain();
  const auto eval = pipeline::dense_test_grid(
    a.extend ? geometry::make_box_domain(domain.lower(), domain.upper()) : domain);
  const double sign = config.shape == geometry::Shape::concave ? -1.0 : 1.0;
  std::vector<std::vector<double>> cols;
  for (std::size_t k = 0; k < eval.dim(); ++k) {
    cols.push_back(column(eval, k));
  }
  std::vector<double> smooth(eval.size());
  for (std::size_t i = 0; i < eval.size(); ++i) {
    try {
      smooth[i] = sign * fit.smoother.evaluate(eval[i]).value;
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::smoothing) {
        throw;
      }
      smooth[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  cols.push_back(std::move(smooth));
  cols.push_back(geometry::evaluate_many(fit.envelope, eval, true));
  auto header = coordinate_names(x_cols);
  header.insert(header.end(), { "smoother", "estimate" });
  const fs::path curve_path = dir / "curve.csv";
  io::write_file_atomic(curve_path, io::format_csv(header, cols));

  io::RunManifest m;
  m.command = "fit";
  m.args = argv;
  m.config = { { "x_cols", x_cols },
               { "y_col", a.y_col },
               { "shape", a.shape },
               { "smoother", a.smoother },
               { "degree", a.degree },
               { "kernel", a.kernel },
               { "bandwidth", fit.smoother.bandwidth() },
               { "bandwidth_rule", a.bandwidth == "cv" ? "loocv" : "fixed" },
               { "grid_per_axis", a.grid },
               { "grid_mesh", fit.grid.mesh() },
               { "domain", a.domain },
               { "sampling", a.sampling },
               { "extend", a.extend },
               { "pieces", fit.envelope.pieces().size() },
               { "sampling_failures", fit.samples.warning_count() },
               { "local_fallbacks", fit.samples.fallback_count } };
  m.input_path = fs::absolute(a.input).string();
  m.input_sha256 = io::sha256_file(a.input);
  m.outputs = { io::record_output(dir, env_path), io::record_output(dir, curve_path) };
  m.timings = { { "total_seconds", seconds_since(started) } };
  const fs::path manifest_path = dir / "manifest.json";
  io::write_file_atomic(manifest_path, io::manifest_to_json(m));

  out << fmt::format("fit: {} pieces, bandwidth {}, grid mesh {}, {} sampling failures\n",
                     fit.envelope.pieces().size(), io::format_double(fit.smoother.bandwidth()),
                     io::format_double(fit.grid.mesh()), fit.samples.warning_count());
  return manifest_path;
}

fs::path band_command(const BandArgs& a, const std::vector<std::string>& argv, std::ostream& out)
{
  const auto started = Clock::now();
  const auto x_cols = split_list(a.x_cols);
  const auto data = io::read_csv(a.input, x_cols, a.y_col);
  if (a.eval_points < 2) {
    fail(ErrorKind::usage, "--eval-points must be at least 2");
  }
  bands::BandConfig config;
  config.alpha = a.alpha;
  config.delta_exponent = a.delta;
  config.drift_correction = a.drift;
  config.kernel = smoothing::Kernel::from_name(a.kernel);

  if (data.dim() != 1) {
    fail(ErrorKind::unsupported_dimension,
         "confidence bands are only available for 1-d data, got d = " + std::to_string(data.dim()));
  }
  const auto domain = data.domain_or_bounding_box();
  const double lo = domain.lower()[0];
  const double hi = domain.upper()[0];
  std::vector<double> xs(a.eval_points);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = i + 1 == xs.size() ? hi : lo + (hi - lo) * static_cast<double>(i) /
                                                static_cast<double>(xs.size() - 1);
  }
  bands::BandEstimate band;
  if (a.center == "convex") {
    band = bands::convexified_band(data, config, xs, a.grid);
  } else if (a.center == "raw") {
    band = bands::confidence_band(data, config, xs);
  } else {
    fail(ErrorKind::usage, "--center must be convex or raw");
  }

  std::vector<double> lower(band.size());
  std::vector<double> upper(band.size());
  for (std::size_t i = 0; i < band.size(); ++i) {
    lower[i] = band.lower(i);
    upper[i] = band.upper(i);
  }
  const auto& c = band.constants;
  const fs::path dir(a.out);
  const fs::path band_path = dir / "band.csv";
  io::write_file_atomic(
    band_path, io::format_csv(std::vector<std::string>{ "x", "center", "lower", "upper", "halfwidth" },
                              std::vector<std::vector<double>>{ xs, band.centers, lower, upper,
                                                                band.halfwidths },
                              std::vector<std::string>{ "band width: " + io::format_double(band.width()) }));

  io::RunManifest m;
  m.command = "band";
  m.args = argv;
  m.config = { { "x_cols", x_cols },
               { "y_col", a.y_col },
               { "alpha", c.alpha },
               { "c_alpha", c.c_alpha },
               { "delta_exponent", c.delta_exponent },
               { "drift_correction", c.drift_correction },
               { "d_n", c.d_n },
               { "n", c.n },
               { "bandwidth", c.bandwidth },
               { "kernel", c.kernel },
               { "kernel_sq_integral", c.kernel_sq_integral },
               { "second_moment", c.second_moment_method },
               { "center", a.center },
               { "unreliable_within", c.support_radius * c.bandwidth },
               { "width", band.width() } };
  m.input_path = fs::absolute(a.input).string();
  m.input_sha256 = io::sha256_file(a.input);
  m.outputs = { io::record_output(dir, band_path) };
  m.timings = { { "total_seconds", seconds_since(started) } };
  const fs::path manifest_path = dir / "manifest.json";
  io::write_file_atomic(manifest_path, io::manifest_to_json(m));

  out << "band width: " << io::format_double(band.width()) << "\n";
  return manifest_path;
}

fs::path simulate_command(const SimulateArgs& a, const std::vector<std::string>& argv,
                          std::ostream& out)
{
  sim::FigureOptions options;
  options.out_dir = a.out;
  options.seed = a.seed;
  options.replications = a.reps;
  options.args = argv;
  if (!a.domain2d.empty()) {
    std::vector<double> v;
    for (const auto& s : split_list(a.domain2d)) {
      try {
        v.push_back(std::stod(s));
      } catch (const std::exception&) {
        fail(ErrorKind::usage, "--domain2d expects lo1,lo2,hi1,hi2");
      }
    }
    if (v.size() != 4) {
      fail(ErrorKind::usage, "--domain2d expects lo1,lo2,hi1,hi2");
    }
    options.domain2d = geometry::make_box_domain({ v[0], v[1] }, { v[2], v[3] });
  }
  if (a.reps && *a.reps == 0) {
    fail(ErrorKind::usage, "--reps must be positive");
  }
  const auto result = sim::reproduce_figure(a.study, options);
  out << fmt::format("{}: wrote {} files\n", result.study, result.files.size());
  return result.manifest;
}

fs::path dispatch(const std::vector<std::string>& args, std::ostream& out);

void replay_command(const ReplayArgs& a, std::ostream& out)
{
  const auto old = io::manifest_from_json(io::read_file(a.manifest));
  if (old.command == "replay") {
    fail(ErrorKind::usage, "cannot replay a replay");
  }
  if (!old.input_path.empty() && io::sha256_file(old.input_path) != old.input_sha256) {
    fail(ErrorKind::io, "input " + old.input_path + " changed since the recorded run");
  }
  std::vector<std::string> args = old.args;
  if (!a.out.empty()) {
    const auto it = std::find(args.begin(), args.end(), "--out");
    if (it != args.end() && it + 1 != args.end()) {
      *(it + 1) = a.out;
    } else {
      args.insert(args.end(), { "--out", a.out });
    }
  }
  std::ostringstream sink;
  const fs::path manifest_path = dispatch(args, sink);
  const auto fresh = io::manifest_from_json(io::read_file(manifest_path));
  std::size_t mismatches = 0;
  for (const auto& o : old.outputs) {
    const auto it = std::find_if(fresh.outputs.begin(), fresh.outputs.end(),
                                 [&](const io::OutputRecord& r) { return r.path == o.path; });
    if (it == fresh.outputs.end() || it->sha256 != o.sha256) {
      ++mismatches;
      out << "differs: " << o.path << "\n";
    }
  }
  if (mismatches > 0 || fresh.outputs.size() != old.outputs.size()) {
    fail(ErrorKind::io, fmt::format("replay produced {} differing outputs", mismatches));
  }
  out << fmt::format("replay: {} outputs identical\n", old.outputs.size());
}

void add_fit(CLI::App& app, FitArgs& a)
{
  app.add_option("--input", a.input, "CSV file with a header row")->required();
  app.add_option("--x-cols", a.x_cols, "comma-separated feature columns");
  app.add_option("--y-col", a.y_col, "response column");
  app.add_option("--shape", a.shape, "convex or concave");
  app.add_option("--smoother", a.smoother, "nw, localpoly or window");
  app.add_option("--degree", a.degree, "local polynomial degree (1 or 2)");
  app.add_option("--kernel", a.kernel, "gaussian, epanechnikov or uniform-ball");
  app.add_option("--bandwidth", a.bandwidth, "bandwidth h or 'cv'");
  app.add_option("--grid", a.grid, "grid points per axis");
  app.add_option("--domain", a.domain, "box (bounding box) or hull (convex hull of the x data)");
  app.add_option("--sampling", a.sampling, "strict or lenient");
  app.add_flag("--extend", a.extend, "evaluate the curve over the bounding box");
  app.add_option("--out", a.out, "output directory")->required();
}

void add_band(CLI::App& app, BandArgs& a)
{
  app.add_option("--input", a.input, "CSV file with a header row")->required();
  app.add_option("--x-cols,--x-col", a.x_cols, "feature column");
  app.add_option("--y-col", a.y_col, "response column");
  app.add_option("--alpha", a.alpha, "1 - confidence level");
  app.add_option("--delta-exponent", a.delta, "bandwidth exponent in (1/5, 1/3)");
  app.add_option("--drift-correction", a.drift, "additive correction kappa of d_n");
  app.add_option("--kernel", a.kernel, "compact kernel");
  app.add_option("--center", a.center, "convex (envelope) or raw (kernel estimate)");
  app.add_option("--eval-points", a.eval_points, "evaluation points");
  app.add_option("--grid", a.grid, "grid points for the convexified center");
  app.add_option("--out", a.out, "output directory")->required();
}

void add_simulate(CLI::App& app, SimulateArgs& a)
{
  app.add_option("--study", a.study, "regression1d, varbiasmse1d, confidence, regression2d, varbiasmse2d")
    ->required();
  app.add_option("--reps", a.reps, "override the run or replication count");
  app.add_option("--seed", a.seed, "base seed");
  app.add_option("--domain2d", a.domain2d, "box lo1,lo2,hi1,hi2 for the 2-d studies");
  app.add_option("--out", a.out, "output directory");
}

fs::path dispatch(const std::vector<std::string>& args, std::ostream& out)
{
  CLI::App app{ "Convex regression by smoothing and convexification", "convexreg" };
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::version()));
  FitArgs fit;
  BandArgs band;
  SimulateArgs simulate;
  ReplayArgs replay;
  auto* fit_cmd = app.add_subcommand("fit", "fit a convex or concave envelope");
  add_fit(*fit_cmd, fit);
  auto* band_cmd = app.add_subcommand("band", "confidence band for 1-d data");
  add_band(*band_cmd, band);
  auto* sim_cmd = app.add_subcommand("simulate", "reproduce a simulation study");
  add_simulate(*sim_cmd, simulate);
  auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest and compare outputs");
  replay_cmd->add_option("--manifest", replay.manifest, "manifest.json of a previous run")->required();
  replay_cmd->add_option("--out", replay.out, "output directory for the re-run");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {};
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return {};
  } catch (const CLI::CallForVersion&) {
    out << io::version() << "\n";
    return {};
  } catch (const CLI::ParseError& e) {
    fail(ErrorKind::usage, e.what());
  }

  if (fit_cmd->parsed()) {
    return fit_command(fit, args, out);
  }
  if (band_cmd->parsed()) {
    return band_command(band, args, out);
  }
  if (sim_cmd->parsed()) {
    return simulate_command(simulate, args, out);
  }
  replay_command(replay, out);
  return {};
}

std::string one_line(std::string s)
{
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  try {
    dispatch(args, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << to_string(e.category()) << ": " << to_string(e.kind()) << ": "
        << one_line(e.what()) << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: io: io: " << one_line(e.what()) << "\n";
    return exit_code(ErrorCategory::io);
  }
}

} // namespace convexreg::cli
