// Serial reference vs parallel kernel timings.
#include <benchmark/benchmark.h>

#include <random>

#include "convexreg/geometry/envelope.hpp"
#include "convexreg/geometry/grid.hpp"
#include "convexreg/pipeline/diagnostics.hpp"
#include "convexreg/sim/moments.hpp"
#include "convexreg/sim/simulation.hpp"
#include "convexreg/smoothing/bandwidth.hpp"
#include "convexreg/smoothing/sampling.hpp"

namespace {

using namespace convexreg;

smoothing::Dataset bench_data(std::size_t n)
{
  sim::SimSpec spec;
  spec.function = sim::TestFunction::named("f2");
  spec.n = n;
  spec.seed = 11;
  return sim::simulate_dataset(spec, 0);
}

geometry::ConvexEnvelope bench_envelope()
{
  const auto domain = geometry::make_box_domain({ 0.0, 0.0 }, { 1.0, 1.0 });
  const auto grid = geometry::uniform_grid(domain, 60);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z(0.0, 0.05);
  std::vector<double> v;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.points()[i];
    v.push_back(p[0] * p[0] + p[1] * p[1] + z(rng));
  }
  return geometry::lower_hull(grid.points(), v);
}

void BM_EvaluateSerial(benchmark::State& state)
{
  const auto env = bench_envelope();
  const auto pts = pipeline::dense_test_grid(env.domain());
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::evaluate_many_serial(env, pts));
  }
}

void BM_EvaluateParallel(benchmark::State& state)
{
  const auto env = bench_envelope();
  const auto pts = pipeline::dense_test_grid(env.domain());
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::evaluate_many(env, pts));
  }
}

void BM_SampleSerial(benchmark::State& state)
{
  const auto fit = smoothing::fit_local_poly(bench_data(2000), smoothing::Kernel(), 0.1, 1);
  const auto grid = geometry::uniform_grid(geometry::make_box_domain({ 0.0 }, { 1.0 }), 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smoothing::sample_on_grid_serial(fit, grid));
  }
}

void BM_SampleParallel(benchmark::State& state)
{
  const auto fit = smoothing::fit_local_poly(bench_data(2000), smoothing::Kernel(), 0.1, 1);
  const auto grid = geometry::uniform_grid(geometry::make_box_domain({ 0.0 }, { 1.0 }), 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smoothing::sample_on_grid(fit, grid));
  }
}

void BM_CrossValidateSerial(benchmark::State& state)
{
  const auto data = bench_data(300);
  const auto candidates = smoothing::default_bandwidth_candidates(data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
      smoothing::cross_validate_bandwidth_serial(data, smoothing::SmootherSettings{}, candidates));
  }
}

void BM_CrossValidateParallel(benchmark::State& state)
{
  const auto data = bench_data(300);
  const auto candidates = smoothing::default_bandwidth_candidates(data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
      smoothing::cross_validate_bandwidth(data, smoothing::SmootherSettings{}, candidates));
  }
}

sim::SimSpec bench_study()
{
  sim::SimSpec spec;
  spec.function = sim::TestFunction::named("f2");
  spec.replications = 64;
  spec.seed = 3;
  return spec;
}

void BM_MomentStudySerial(benchmark::State& state)
{
  const auto spec = bench_study();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::moment_study_serial(spec));
  }
}

void BM_MomentStudyParallel(benchmark::State& state)
{
  const auto spec = bench_study();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::moment_study(spec));
  }
}

} // namespace

BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CrossValidateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MomentStudySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentStudyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
