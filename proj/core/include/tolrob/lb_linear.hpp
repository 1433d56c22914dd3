#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tolrob/geometry.hpp"
#include "tolrob/model.hpp"
#include "tolrob/random.hpp"
#include "tolrob/region.hpp"

namespace tolrob {

/// Separation of the greedy cover on the radius W(1+beta) sphere:
/// r_beta = 2 W sqrt(2 beta (beta + 1)).
double shatter_mesh(double W, double beta);

/// The W-bounded halfspace tangent to the radius-W sphere at x, positive on
/// the far side: Linear(x / ||x||, -W).
Hypothesis tangent_hypothesis(const Vector& x_on_sphere, double W);

struct ShatterOptions {
  std::size_t samples_per_cell = 200;
  double initial_beta = 0.25;
  std::size_t max_halvings = 40;
  SphereCoverOptions cover{};
};

/// M disjoint sphere cells Z_1..Z_M with tangent witnesses h_i that are -1
/// on every other cell. Cells are finite samples of Voronoi regions of the
/// greedy cover (each cell also holds its own cover centers).
struct ShatterFamily {
  double W = 1.0;
  double beta = 0.0;
  std::size_t d = 2;
  std::size_t M = 0;
  std::size_t halvings = 0;
  SphereCover cover;
  std::vector<std::vector<Vector>> cells;
  std::vector<Hypothesis> witnesses;

  double sphere_radius() const { return W * (1.0 + beta); }
};

ShatterFamily build_shatter_family(double W, std::size_t d, std::size_t M, Seed seed, const ShatterOptions& opts = {});

/// Discretized W-bounded halfspaces: `count` hypotheses on a direction x
/// offset grid (d = 2) or random directions x offset grid (d > 2).
std::vector<Hypothesis> bounded_linear_net(double W, std::size_t d, std::size_t count, Seed seed);

/// Hypotheses in `net` that are -1 on every cell sample.
std::size_t stipulation1_failures(const ShatterFamily& fam, std::span<const Hypothesis> net);

/// (i, j != i, sample) triples where witness i predicts +1 on cell j.
std::size_t stipulation2_failures(const ShatterFamily& fam);

struct Thm2Instance {
  std::size_t m = 1;
  std::size_t M = 0;
  ShatterFamily shatter;
  std::vector<std::vector<std::size_t>> subsets;  // cell index -> sorted m-subset of {0..3m-1}
  std::vector<Vector> anchors;                    // x_0 .. x_{3m-1}
  std::vector<Region> regions;                    // U_{x_i}
  RegionFamily family;
  // Exact robust loss of witness t at anchor i (label -1).
  std::vector<std::vector<int>> witness_anchor_loss;

  const Hypothesis& witness(std::size_t t) const { return shatter.witnesses[t]; }
  LabeledExample example(std::size_t i) const { return {anchors[i], Label::kNegative}; }
  std::size_t num_anchors() const { return anchors.size(); }
  /// D_T: uniform on the anchors outside T, all labeled -1.
  DiscreteDistribution distribution_for(std::size_t t) const;
  bool in_subset(std::size_t t, std::size_t i) const;
};

std::size_t binomial(std::size_t n, std::size_t k);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

/// 1/2 - |T cap T'| / (2m).
double cross_loss_formula(std::span<const std::size_t> t, std::span<const std::size_t> t_prime, std::size_t m);

struct Thm2Options {
  ShatterOptions shatter{};
  std::size_t audit_net = 2000;
};

/// Builds the instance and audits both combinatorial guarantees; throws
/// std::logic_error if either fails.
Thm2Instance build_thm2_instance(std::size_t m, double W, std::size_t d, Seed seed, const Thm2Options& opts = {});

/// What a learner sees in one game trial. `secret` is the adversary's subset
/// index and is read only by the omniscient control.
struct TrialView {
  std::span<const std::size_t> observed;
  std::size_t secret = 0;
};

using Learner = std::function<std::size_t(const Thm2Instance&, const TrialView&, Rng&)>;

Learner rerm_over_witnesses();
Learner random_consistent();
Learner omniscient();

struct GameResult {
  std::size_t trials = 0;
  std::vector<double> loss_samples;
  double freq_loss_above_eighth = 0.0;
  double mean_loss = 0.0;
  double loss_stddev = 0.0;
};

GameResult run_adversarial_game(const Thm2Instance& inst, const Learner& learner, std::size_t n_samples,
                                std::size_t trials, Seed seed);

/// E_T E_S[loss] by enumerating every subset and every ordered m-sample.
/// Learner randomness is fixed per (T, S) so random learners are averaged
/// over one draw each.
double exact_expected_loss(const Thm2Instance& inst, const Learner& learner);

}  // namespace tolrob
