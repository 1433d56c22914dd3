#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "tolrob/lb_linear.hpp"
#include "tolrob/rerm.hpp"
#include "tolrob/robust_vc.hpp"

namespace tolrob {
namespace {

void BM_VcSearchOverhead(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const OverheadInstance inst = default_overhead_instance(2, k, 7);
  for (auto _ : state) {
    const auto est = robust_vc_search(inst.cls, inst.family, inst.universe, 4);
    benchmark::DoNotOptimize(est.dimension_lower);
  }
}
BENCHMARK(BM_VcSearchOverhead)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RermExhaustive(benchmark::State& state) {
  const auto n_h = static_cast<std::size_t>(state.range(0));
  std::vector<Hypothesis> hs;
  for (std::size_t i = 0; i < n_h; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_h);
    hs.push_back(Hypothesis::linear(Vector{std::cos(t), std::sin(t)}, 0.1));
  }
  const RermOracle oracle = RermOracle::exhaustive(FiniteClass(std::move(hs)));
  RegionFamily fam = RegionFamily::with_default_ball(0.2);
  Rng rng = make_rng(3);
  std::vector<LabeledExample> s;
  for (int i = 0; i < 100; ++i) s.push_back({uniform_in_ball(Ball(Vector{0.0, 0.0}, 2.0), rng), Label::kPositive});
  for (auto _ : state) benchmark::DoNotOptimize(rerm_solve(oracle, fam, s, 0.1).achieved_loss);
}
BENCHMARK(BM_RermExhaustive)->Arg(16)->Arg(256);

void BM_LowerBoundInstance(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_thm2_instance(1, 1.0, 2, 5).M);
}
BENCHMARK(BM_LowerBoundInstance)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tolrob
