#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "convexreg/geometry/domain.hpp"
#include "convexreg/pipeline/pipeline.hpp"
#include "convexreg/sim/test_functions.hpp"
#include "convexreg/smoothing/dataset.hpp"

namespace convexreg::sim {

enum class Design { uniform_random, lattice };

struct SimSpec
{
  TestFunction function = TestFunction::named("f2");
  Design design = Design::uniform_random;
  // Sample size for random designs; points per axis for lattices.
  std::size_t n = 100;
  double sigma = 0.1;
  std::size_t replications = 2000;
  std::uint64_t seed = 1;
  // Draw the random design once and reuse it in every replication.
  bool fixed_design = false;
  // Defaults to the test function's box.
  std::optional<geometry::PolyhedralDomain> domain;
  pipeline::PipelineConfig pipeline = default_pipeline();

  const geometry::PolyhedralDomain& resolved_domain() const
  {
    return domain ? *domain : function.default_domain();
  }
  std::size_t sample_size() const;

  // Local-linear, gaussian kernel, cross-validated bandwidth, 100-point grid.
  static pipeline::PipelineConfig default_pipeline();
};

// Throws invalid_input for sigma < 0, n = 0, R = 0 or mismatched dimensions.
void validate(const SimSpec& spec);

// y_i = f(x_i) + sigma z_i with z_i standard normal. The design and noise of
// replication r come from stream r of the spec's seed (a fixed design comes
// from its own stream), so the result depends only on (spec, r).
smoothing::Dataset simulate_dataset(const SimSpec& spec, std::size_t replication);

} // namespace convexreg::sim
