#include <benchmark/benchmark.h>

#include "tolrob/geometry.hpp"
#include "tolrob/region.hpp"

namespace tolrob {
namespace {

void BM_RegionSamplerOverlappingUnion(benchmark::State& state) {
  const Region r = Region::balls({Ball(Vector{0.0, 0.0, 0.0}, 1.0), Ball(Vector{1.0, 0.0, 0.0}, 1.0)});
  RegionSampler sampler(r);
  Rng rng = make_rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_RegionSamplerOverlappingUnion);

void BM_GreedySphereCover(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Seed seed = 0;
  for (auto _ : state) {
    const auto cover = greedy_sphere_cover(d, 1.0, 0.5, seed++);
    benchmark::DoNotOptimize(cover.centers.size());
  }
}
BENCHMARK(BM_GreedySphereCover)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CoverCompactByBalls(benchmark::State& state) {
  const Region target = Region::balls({Ball(Vector{0.0, 0.0}, 1.0), Ball(Vector{5.0, 0.0}, 1.0)});
  const double rho = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover_compact_by_balls(target, rho, 1).size());
}
BENCHMARK(BM_CoverCompactByBalls)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
}  // namespace tolrob
