#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "tolrob/oracle_game.hpp"
#include "tolrob/region.hpp"

namespace tolrob {
namespace {

TEST(TwoAnchorInstance, PlaneExample) {
  const auto inst = build_appendixB(20.0, 1.0, 2);
  EXPECT_DOUBLE_EQ(inst.D0, 11.0);
  EXPECT_EQ(inst.v, (Vector{9.5, 0.0}));
  EXPECT_EQ(inst.v_prime, (Vector{2.0, 0.0}));
  const Region v_region = inst.V.region_for(inst.v).normalized();
  EXPECT_EQ(v_region, Region::balls({Ball(Vector{9.5, 0.0}, 5.5), Ball(Vector{2.0, 0.0}, 2.5)}));
  const Region vg_region = inst.V_gamma.region_for(inst.v).normalized();
  EXPECT_EQ(vg_region, Region::balls({Ball(Vector{9.5, 0.0}, 6.5), Ball(Vector{2.0, 0.0}, 3.5)}));
  EXPECT_EQ(inst.U.region_for(inst.v * -1.0).normalized(), Region::ball(Vector{-9.5, 0.0}, 5.5));
}

TEST(TwoAnchorInstance, Validation) {
  EXPECT_ANY_THROW(build_appendixB(10.0, 1.0, 2));
  EXPECT_ANY_THROW(build_appendixB(20.0, 0.0, 2));
  EXPECT_ANY_THROW(build_appendixB(20.0, 1.0, 0));
}

TEST(TwoAnchorInstance, GeometryClaims) {
  for (double D : {20.0, 50.0, 110.0}) {
    for (std::size_t d : {1, 2, 3}) {
      const auto inst = build_appendixB(D, 1.0, d);
      const auto geo = appendixB_geometry(inst);
      EXPECT_TRUE(geo.u_disjoint());
      EXPECT_TRUE(geo.v_overlap());
      EXPECT_LE(diameter(inst.V.region_for(inst.v)), D);
      EXPECT_TRUE(inst.in_u_gamma(inst.v));
      EXPECT_FALSE(inst.in_u_gamma(Vector::zeros(d)));
    }
  }
}

TEST(LossTable, Values) {
  for (std::size_t d : {1, 2, 3}) {
    const auto t = loss_table(build_appendixB(20.0, 1.0, d));
    EXPECT_EQ(t[0][0], 0.0);
    EXPECT_EQ(t[0][1], 0.5);
    EXPECT_EQ(t[1][0], 1.0);
    EXPECT_EQ(t[1][1], 0.5);
  }
}

TEST(Bounds, Arithmetic) {
  EXPECT_NEAR(appendixB_bound(build_appendixB(20.0, 1.0, 2)), 12.25 / 121.0, 1e-15);
  EXPECT_NEAR(appendixB_bound(build_appendixB(110.0, 1.0, 2)), 12.25 / (101.0 * 101.0), 1e-15);
  EXPECT_NEAR(appendixB_corrected_bound(build_appendixB(20.0, 1.0, 1)), 3.5 / 6.5, 1e-15);
}

// Independent length ratio from explicit interval lists.
double interval_ratio_1d(const AppendixBInstance& inst) {
  using Iv = std::pair<double, double>;
  const double v = inst.v[0], vp = inst.v_prime[0], g = inst.gamma, ru = inst.D0 / 2.0 + g;
  const std::vector<Iv> vg{{v - ru, v + ru}, {vp - 3.5 * g, vp + 3.5 * g}};
  const std::vector<Iv> ug{{v - ru, v + ru}, {-v - ru, -v + ru}};
  // Fine Riemann sum over the union hull: exact up to the step on piecewise constant indicators.
  const double lo = -v - ru, hi = v + ru;
  const std::size_t steps = 2'000'000;
  const double h = (hi - lo) / steps;
  double in_v = 0.0, in_diff = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = lo + (i + 0.5) * h;
    auto hit = [x](const std::vector<Iv>& ivs) {
      return std::any_of(ivs.begin(), ivs.end(), [x](const Iv& iv) { return iv.first <= x && x <= iv.second; });
    };
    if (hit(vg)) {
      in_v += h;
      if (!hit(ug)) in_diff += h;
    }
  }
  return in_diff / in_v;
}

TEST(MeasureBound, ExactOneDimensionalMass) {
  EXPECT_NEAR(appendixB_exact_mass_1d(build_appendixB(20.0, 1.0, 1)), 4.5 / 17.5, 1e-12);
  for (double D : {20.0, 50.0, 110.0}) {
    const auto inst = build_appendixB(D, 1.0, 1);
    EXPECT_NEAR(appendixB_exact_mass_1d(inst), interval_ratio_1d(inst), 1e-5);
  }
}

TEST(MeasureBound, MonteCarloMatchesExactInOneDimension) {
  const auto inst = build_appendixB(20.0, 1.0, 1);
  const auto audit = measure_bound_audit(inst, 100000, 3);
  ASSERT_TRUE(audit.exact.has_value());
  EXPECT_TRUE(audit.matches_exact());
  EXPECT_NEAR(audit.sigma, std::sqrt(audit.p_hat * (1.0 - audit.p_hat) / 1e5), 1e-12);
}

TEST(MeasureBound, PlaneMassBelowCorrectedBound) {
  const auto inst = build_appendixB(20.0, 1.0, 2);
  const auto audit = measure_bound_audit(inst, 100000, 4);
  EXPECT_FALSE(audit.exact.has_value());
  EXPECT_TRUE(audit.within_corrected_bound());
  EXPECT_GT(audit.p_hat, 0.0);
}

TEST(MeasureBound, RejectsUnresolvableSampleSize) {
  EXPECT_ANY_THROW(measure_bound_audit(build_appendixB(110.0, 1.0, 3), 1000, 1));
}

TEST(QueryGame, BudgetZeroCostsAQuarter) {
  const auto inst = build_appendixB(20.0, 1.0, 2);
  const auto res = run_query_game(inst, {0, 1, 4}, 4000, 5);
  ASSERT_EQ(res.excess_error.size(), 3u);
  const double sd = std::sqrt(0.25 * 0.75 / 4000.0);
  EXPECT_NEAR(res.excess_error[0], 0.25, 3.0 * sd);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(res.conf_intervals[i].first, res.excess_error[i]);
    EXPECT_GE(res.conf_intervals[i].second, res.excess_error[i]);
  }
}

TEST(QueryGame, LargeBudgetSaturates) {
  const auto inst = build_appendixB(20.0, 1.0, 1);
  const auto res = run_query_game(inst, {0, 10, 200}, 2000, 6);
  EXPECT_EQ(res.excess_error.back(), 0.0);
  EXPECT_LT(res.excess_error[1], res.excess_error[0]);
  // A detection under Z = U would mean the oracle left U^g.
  for (std::size_t k : res.u_first_detection) EXPECT_EQ(k, 200u);
}

TEST(QueryGame, AnchorsAreSymmetric) {
  const auto inst = build_appendixB(20.0, 1.0, 2);
  const auto res = run_query_game(inst, {0, 64}, 4000, 7);
  const auto [diff, se] = anchor_symmetry(res);
  EXPECT_LE(diff, 3.0 * se + 1e-12);
}

TEST(QueryGame, DeterministicPerSeed) {
  const auto inst = build_appendixB(20.0, 1.0, 2);
  const auto a = run_query_game(inst, {0, 8, 32}, 500, 8);
  const auto b = run_query_game(inst, {0, 8, 32}, 500, 8);
  EXPECT_EQ(a.excess_error, b.excess_error);
  EXPECT_EQ(a.first_detection, b.first_detection);
}

TEST(QueryGame, RejectsUnsortedBudgets) {
  const auto inst = build_appendixB(20.0, 1.0, 1);
  EXPECT_ANY_THROW(run_query_game(inst, {4, 2}, 100, 1));
}

TEST(QueryGame, ThresholdAndCurve) {
  const auto inst = build_appendixB(20.0, 1.0, 1);
  const auto res = run_query_game(inst, {0, 64}, 2000, 9);
  const auto k = budget_threshold(res);
  ASSERT_TRUE(k.has_value());
  EXPECT_GT(*k, 0u);
  EXPECT_LE(*k, 64u);
  EXPECT_DOUBLE_EQ(query_lower_curve(inst, 0), 0.25);
  EXPECT_NEAR(query_lower_curve(inst, 2), 0.25 * std::pow(1.0 - appendixB_bound(inst), 2.0), 1e-15);
}

TEST(Statistics, WilsonInterval) {
  const auto [lo, hi] = wilson_interval(50, 100);
  EXPECT_NEAR(lo, 0.4038, 1e-4);
  EXPECT_NEAR(hi, 0.5962, 1e-4);
  const auto [zlo, zhi] = wilson_interval(0, 100);
  EXPECT_EQ(zlo, 0.0);
  EXPECT_GT(zhi, 0.0);
}

TEST(Statistics, LogLogSlope) {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 * xi * xi);
  EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
}

}  // namespace
}  // namespace tolrob
