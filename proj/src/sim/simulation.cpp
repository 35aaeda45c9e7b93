#include "convexreg/sim/simulation.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "convexreg/error.hpp"
#include "convexreg/geometry/grid.hpp"
#include "convexreg/random.hpp"

namespace convexreg::sim {

namespace {

constexpr std::uint64_t kDesignStream = std::numeric_limits<std::uint64_t>::max();

void draw_uniform_design(const geometry::PolyhedralDomain& domain, std::size_t n,
                         std::mt19937_64& engine, geometry::PointSet& out)
{
  const std::size_t d = domain.dim();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(d);
  out.reserve(n);
  while (out.size() < n) {
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = domain.lower()[k] + unif(engine) * (domain.upper()[k] - domain.lower()[k]);
    }
    // Rejection from the bounding box; a no-op for boxes.
    if (domain.is_box() || domain.contains(x, 0.0)) {
      out.push_back(x);
    }
  }
}

} // namespace

std::size_t SimSpec::sample_size() const
{
  if (design == Design::lattice) {
    return static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(n), static_cast<double>(function.dim()))));
  }
  return n;
}

pipeline::PipelineConfig SimSpec::default_pipeline()
{
  pipeline::PipelineConfig config;
  config.smoother.settings = { smoothing::SmootherKind::local_poly,
                               smoothing::Kernel(smoothing::KernelType::gaussian), 1,
                               smoothing::KernelForm::ratio };
  config.grid.per_axis = 100;
  return config;
}

void validate(const SimSpec& spec)
{
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
    fail(ErrorKind::invalid_input, "noise standard deviation must be non-negative");
  }
  if (spec.n == 0 || spec.replications == 0) {
    fail(ErrorKind::invalid_input, "sample size and replication count must be positive");
  }
  if (spec.resolved_domain().dim() != spec.function.dim()) {
    fail(ErrorKind::invalid_input, "simulation domain does not match the test function");
  }
  if (spec.design == Design::lattice && spec.n < 2) {
    fail(ErrorKind::invalid_input, "a lattice design needs at least 2 points per axis");
  }
}

smoothing::Dataset simulate_dataset(const SimSpec& spec, std::size_t replication)
{
  validate(spec);
  const auto& domain = spec.resolved_domain();
  auto engine = stream_engine(spec.seed, replication);

  smoothing::Dataset data{ geometry::PointSet(domain.dim()), {}, domain };
  if (spec.design == Design::lattice) {
    data.xs = geometry::lattice_grid(domain, spec.n).points();
  } else if (spec.fixed_design) {
    auto design_engine = stream_engine(spec.seed, kDesignStream);
    draw_uniform_design(domain, spec.n, design_engine, data.xs);
  } else {
    draw_uniform_design(domain, spec.n, engine, data.xs);
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  data.ys.reserve(data.xs.size());
  for (std::size_t i = 0; i < data.xs.size(); ++i) {
    const double z = spec.sigma > 0.0 ? noise(engine) : 0.0;
    data.ys.push_back(spec.function(data.xs[i]) + spec.sigma * z);
  }
  return data;
}

} // namespace convexreg::sim
