#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <vector>

#include "tolrob/lb_linear.hpp"
#include "tolrob/model.hpp"
#include "tolrob/random.hpp"

namespace tolrob {
namespace {

TEST(TangentHypothesis, Examples) {
  const Hypothesis h = tangent_hypothesis(Vector{1.0, 0.0}, 1.0);
  const auto& lin = std::get<Linear>(h.variant());
  EXPECT_EQ(lin.w, (Vector{1.0, 0.0}));
  EXPECT_EQ(lin.b, -1.0);
  EXPECT_EQ(predict(h, Vector{1.0, 0.0}), Label::kPositive);
  EXPECT_EQ(predict(h, Vector{0.0, 0.0}), Label::kNegative);
  const Hypothesis h2 = tangent_hypothesis(Vector{0.0, 2.0}, 2.0);
  const auto& up = std::get<Linear>(h2.variant());
  EXPECT_EQ(up.w, (Vector{0.0, 1.0}));
  EXPECT_EQ(up.b, -2.0);
}

TEST(TangentHypothesis, RejectsPointOffSphere) { EXPECT_ANY_THROW(tangent_hypothesis(Vector{0.5, 0.0}, 1.0)); }

TEST(TangentHypothesis, IsWBounded) {
  Rng rng = make_rng(1);
  const BoundedLinearClass cls{1.5, 3};
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(cls.contains(tangent_hypothesis(uniform_on_sphere(3, 1.5, rng), 1.5)));
}

// On the radius W(1+beta) sphere the tangent halfspace at x is positive
// exactly on the closed cap of radius W sqrt(2 beta (beta+1)) around (1+beta)x.
TEST(TangentHypothesis, CapRadiusIdentity) {
  const double W = 1.0, beta = 0.125;
  const double cap = W * std::sqrt(2.0 * beta * (beta + 1.0));
  EXPECT_NEAR(cap, 0.5303, 1e-4);
  Rng rng = make_rng(2);
  const Vector x = uniform_on_sphere(2, W, rng);
  const Hypothesis h = tangent_hypothesis(x, W);
  std::size_t mismatch = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector z = uniform_on_sphere(2, W * (1.0 + beta), rng);
    const bool positive = predict(h, z) == Label::kPositive;
    const bool in_cap = distance(z, x * (1.0 + beta)) <= cap;
    mismatch += positive != in_cap;
  }
  EXPECT_LT(static_cast<double>(mismatch) / n, 1e-3);
}

TEST(ShatterMesh, Formula) {
  EXPECT_DOUBLE_EQ(shatter_mesh(1.0, 0.125), 2.0 * std::sqrt(2.0 * 0.125 * 1.125));
  EXPECT_DOUBLE_EQ(shatter_mesh(2.0, 0.5), 4.0 * std::sqrt(1.5));
}

void expect_valid_family(const ShatterFamily& fam, std::size_t M) {
  EXPECT_EQ(fam.M, M);
  ASSERT_EQ(fam.cells.size(), M);
  ASSERT_EQ(fam.witnesses.size(), M);
  EXPECT_NEAR(fam.cover.mesh, shatter_mesh(fam.W, fam.beta), 1e-9);
  EXPECT_EQ(stipulation2_failures(fam), 0u);
  // Disjointness: no sample point appears in two cells.
  std::set<RegionFamily::Key> seen;
  for (const auto& cell : fam.cells) {
    EXPECT_FALSE(cell.empty());
    for (const auto& z : cell) {
      EXPECT_NEAR(z.norm(), fam.sphere_radius(), 1e-9);
      ASSERT_TRUE(seen.insert(RegionFamily::key_of(z)).second);
    }
  }
}

TEST(BuildShatterFamily, FourArcs) {
  const auto fam = build_shatter_family(1.0, 2, 4, 1);
  expect_valid_family(fam, 4);
  // Independent recheck of stipulation 2.
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      for (const auto& z : fam.cells[j]) ASSERT_EQ(predict(fam.witnesses[i], z), Label::kNegative);
    }
  }
}

TEST(BuildShatterFamily, SingleCell) {
  const auto fam = build_shatter_family(1.0, 2, 1, 2);
  expect_valid_family(fam, 1);
}

TEST(BuildShatterFamily, FifteenCellsAndNetStipulation) {
  const auto fam = build_shatter_family(1.0, 2, 15, 3);
  expect_valid_family(fam, 15);
  const auto net = bounded_linear_net(1.0, 2, 2000, 4);
  EXPECT_EQ(net.size(), 2000u);
  EXPECT_EQ(stipulation1_failures(fam, net), 0u);
  // A halfspace negative on the whole sphere is not W-bounded and must fail.
  const std::vector<Hypothesis> outside{Hypothesis::linear(Vector{1.0, 0.0}, -5.0)};
  EXPECT_EQ(stipulation1_failures(fam, outside), 1u);
}

TEST(BuildShatterFamily, ThreeDimensions) {
  const auto fam = build_shatter_family(1.0, 3, 6, 5);
  expect_valid_family(fam, 6);
}

TEST(BoundedLinearNet, MembersAreWBounded) {
  for (std::size_t d : {2, 3}) {
    const BoundedLinearClass cls{1.0, d};
    for (const auto& h : bounded_linear_net(1.0, d, 500, 6)) ASSERT_TRUE(cls.contains(h));
  }
}

TEST(Combinatorics, BinomialAndSubsets) {
  EXPECT_EQ(binomial(6, 2), 15u);
  EXPECT_EQ(binomial(9, 3), 84u);
  EXPECT_EQ(binomial(3, 0), 1u);
  EXPECT_EQ(binomial(2, 3), 0u);
  const auto subs = k_subsets(4, 2);
  ASSERT_EQ(subs.size(), 6u);
  EXPECT_EQ(subs.front(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(subs.back(), (std::vector<std::size_t>{2, 3}));
  EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
}

TEST(Combinatorics, CrossLossFormula) {
  const std::vector<std::size_t> a{0, 1}, b{1, 2}, c{3, 4};
  EXPECT_DOUBLE_EQ(cross_loss_formula(a, a, 2), 0.0);
  EXPECT_DOUBLE_EQ(cross_loss_formula(a, b, 2), 0.25);
  EXPECT_DOUBLE_EQ(cross_loss_formula(a, c, 2), 0.5);
}

std::vector<LabeledExample> full_support(const Thm2Instance& inst) {
  std::vector<LabeledExample> s;
  for (std::size_t i = 0; i < inst.num_anchors(); ++i) s.push_back(inst.example(i));
  return s;
}

TEST(LowerBoundInstance, SingleSubsetSize) {
  const auto inst = build_thm2_instance(1, 1.0, 2, 7);
  EXPECT_EQ(inst.M, 3u);
  ASSERT_EQ(inst.num_anchors(), 3u);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      const int loss = robust_loss_point(inst.witness(t), inst.regions[i], inst.example(i));
      EXPECT_EQ(loss, inst.in_subset(t, i) ? 1 : 0);
    }
  }
}

class LowerBoundFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { inst_ = std::make_unique<Thm2Instance>(build_thm2_instance(2, 1.0, 2, 11)); }
  static void TearDownTestSuite() { inst_.reset(); }
  static std::unique_ptr<Thm2Instance> inst_;
};

std::unique_ptr<Thm2Instance> LowerBoundFixture::inst_;

TEST_F(LowerBoundFixture, Shape) {
  const auto& inst = *inst_;
  EXPECT_EQ(inst.M, 15u);
  EXPECT_EQ(inst.num_anchors(), 6u);
  EXPECT_EQ(inst.subsets, k_subsets(6, 2));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(contains(inst.regions[i], inst.anchors[i]));
}

TEST_F(LowerBoundFixture, WitnessSampleLossIsTwoSixths) {
  const auto& inst = *inst_;
  const auto s = full_support(inst);
  for (std::size_t t = 0; t < inst.M; ++t) {
    EXPECT_DOUBLE_EQ(robust_loss_sample(inst.witness(t), inst.family, s), 2.0 / 6.0);
  }
}

TEST_F(LowerBoundFixture, RealizabilityAndCrossLoss) {
  const auto& inst = *inst_;
  for (std::size_t t = 0; t < inst.M; ++t) {
    const auto dist = inst.distribution_for(t);
    EXPECT_EQ(dist.atoms().size(), 4u);
    EXPECT_EQ(robust_loss_distribution(inst.witness(t), inst.family, dist), 0.0);
    for (std::size_t u = 0; u < inst.M; ++u) {
      EXPECT_NEAR(robust_loss_distribution(inst.witness(u), inst.family, dist),
                  cross_loss_formula(inst.subsets[u], inst.subsets[t], 2), 1e-12);
    }
  }
}

TEST_F(LowerBoundFixture, NetHypothesesLoseAThird) {
  const auto& inst = *inst_;
  const auto s = full_support(inst);
  for (const auto& h : bounded_linear_net(1.0, 2, 1000, 12)) {
    ASSERT_GE(robust_loss_sample(h, inst.family, s), 2.0 / 6.0 - 1e-12);
  }
}

TEST_F(LowerBoundFixture, OmniscientLearnerIsPerfect) {
  const auto res = run_adversarial_game(*inst_, omniscient(), 2, 500, 13);
  EXPECT_EQ(res.mean_loss, 0.0);
  EXPECT_EQ(res.freq_loss_above_eighth, 0.0);
  for (double l : res.loss_samples) ASSERT_EQ(l, 0.0);
}

TEST_F(LowerBoundFixture, RermLearnerLosesAQuarterOnAverage) {
  const auto res = run_adversarial_game(*inst_, rerm_over_witnesses(), 2, 4000, 14);
  ASSERT_EQ(res.loss_samples.size(), 4000u);
  for (double l : res.loss_samples) ASSERT_TRUE(l >= 0.0 && l <= 1.0);
  EXPECT_GE(res.mean_loss, 0.25 - 3.0 * res.loss_stddev / std::sqrt(4000.0));
  const double p = 1.0 / 7.0;
  EXPECT_GE(res.freq_loss_above_eighth, p - 3.0 * std::sqrt(p * (1.0 - p) / 4000.0));
  EXPECT_GE(exact_expected_loss(*inst_, rerm_over_witnesses()), 0.25);
}

TEST_F(LowerBoundFixture, GameIsDeterministicPerSeed) {
  const auto a = run_adversarial_game(*inst_, random_consistent(), 2, 200, 15);
  const auto b = run_adversarial_game(*inst_, random_consistent(), 2, 200, 15);
  EXPECT_EQ(a.loss_samples, b.loss_samples);
}

}  // namespace
}  // namespace tolrob
