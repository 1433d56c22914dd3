#include <benchmark/benchmark.h>

#include <vector>

#include "tolrob/model.hpp"
#include "tolrob/random.hpp"
#include "tolrob/region.hpp"

namespace tolrob {
namespace {

void BM_RobustLossLinearBall(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(1);
  const Hypothesis h = Hypothesis::linear(uniform_on_sphere(d, 1.0, rng), 0.2);
  const Region r = Region::ball(Vector::zeros(d), 0.5);
  const LabeledExample ex{Vector::zeros(d), Label::kPositive};
  for (auto _ : state) benchmark::DoNotOptimize(robust_loss_point(h, r, ex));
}
BENCHMARK(BM_RobustLossLinearBall)->Arg(2)->Arg(8)->Arg(32);

void BM_RobustLossFinitePoints(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(2);
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(uniform_in_ball(Ball(Vector{3.0, 0.0}, 1.0), rng));
  const Region r = Region::points(pts);
  const Hypothesis h = Hypothesis::linear(Vector{1.0, 0.0}, 0.0);
  const LabeledExample ex{pts.front(), Label::kPositive};
  for (auto _ : state) benchmark::DoNotOptimize(robust_loss_point(h, r, ex));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RobustLossFinitePoints)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_RobustLossSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(3);
  RegionFamily fam;
  std::vector<LabeledExample> s;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector x = uniform_in_ball(Ball(Vector{0.0, 0.0}, 2.0), rng);
    fam.assign(x, Region::balls({Ball(x, 0.2), Ball(x + Vector{0.3, 0.0}, 0.1)}));
    s.push_back({x, Label::kPositive});
  }
  const Hypothesis h = Hypothesis::sphere(Vector{0.0, 0.0}, 1.0, Label::kPositive);
  for (auto _ : state) benchmark::DoNotOptimize(robust_loss_sample(h, fam, s));
}
BENCHMARK(BM_RobustLossSample)->Arg(64)->Arg(512);

}  // namespace
}  // namespace tolrob
