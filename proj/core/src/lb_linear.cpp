#include "tolrob/lb_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tolrob {

double shatter_mesh(double W, double beta) { return 2.0 * W * std::sqrt(2.0 * beta * (beta + 1.0)); }

Hypothesis tangent_hypothesis(const Vector& x_on_sphere, double W) {
  if (!(W > 0.0)) throw std::invalid_argument("W must be > 0");
  const double n = x_on_sphere.norm();
  if (std::abs(n - W) > 1e-9 * W) throw std::invalid_argument("tangent point is not on the radius-W sphere");
  return Hypothesis::linear(x_on_sphere * (1.0 / n), -W);
}

namespace {

std::size_t nearest(const Vector& p, const std::vector<Vector>& centers) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double d = squared_distance(p, centers[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

ShatterFamily build_shatter_family(double W, std::size_t d, std::size_t M, Seed seed, const ShatterOptions& opts) {
  if (d < 2) throw std::invalid_argument("shatter family needs d >= 2");
  if (M < 1) throw std::invalid_argument("shatter family needs M >= 1");
  ShatterFamily fam;
  fam.W = W;
  fam.d = d;
  fam.M = M;
  double beta = opts.initial_beta;
  for (std::size_t h = 0;; ++h) {
    fam.cover = greedy_sphere_cover(d, W * (1.0 + beta), shatter_mesh(W, beta), seed_derive(seed, "cover", h), opts.cover);
    fam.halvings = h;
    if (fam.cover.centers.size() >= M) break;
    if (h == opts.max_halvings) {
      throw std::runtime_error("beta search exhausted: achieved only " + std::to_string(fam.cover.centers.size()) +
                               " cells, wanted " + std::to_string(M));
    }
    beta *= 0.5;
  }
  fam.beta = beta;
  const auto& centers = fam.cover.centers;
  const std::size_t raw = centers.size();

  // Fill every raw Voronoi cell before merging the surplus into the last one,
  // so merged cells are sampled as densely as the others.
  std::vector<std::vector<Vector>> raw_cells(raw);
  for (std::size_t i = 0; i < raw; ++i) raw_cells[i].push_back(centers[i]);
  Rng rng = make_rng(seed_derive(seed, "cells"));
  std::size_t unfilled = raw;
  const std::size_t want = opts.samples_per_cell + 1;
  const std::size_t max_draws = want * raw * 10'000;
  for (std::size_t draw = 0; unfilled > 0; ++draw) {
    if (draw >= max_draws) throw std::runtime_error("cell sampling did not fill every Voronoi cell");
    Vector p = uniform_on_sphere(d, fam.sphere_radius(), rng);
    auto& cell = raw_cells[nearest(p, centers)];
    if (cell.size() < want) {
      cell.push_back(std::move(p));
      if (cell.size() == want) --unfilled;
    }
  }
  fam.cells.assign(M, {});
  for (std::size_t i = 0; i < raw; ++i) {
    auto& dst = fam.cells[std::min(i, M - 1)];
    dst.insert(dst.end(), raw_cells[i].begin(), raw_cells[i].end());
  }
  for (std::size_t i = 0; i < M; ++i) {
    fam.witnesses.push_back(tangent_hypothesis(centers[i] * (1.0 / (1.0 + beta)), W));
  }
  return fam;
}

std::vector<Hypothesis> bounded_linear_net(double W, std::size_t d, std::size_t count, Seed seed) {
  if (count == 0) return {};
  const auto n_dir = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const std::size_t n_off = (count + n_dir - 1) / n_dir;
  Rng rng = make_rng(seed_derive(seed, "net"));
  std::vector<Hypothesis> net;
  net.reserve(n_dir * n_off);
  for (std::size_t i = 0; i < n_dir && net.size() < count; ++i) {
    Vector w = d == 2 ? Vector{std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_dir)),
                               std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_dir))}
                      : uniform_on_sphere(d, 1.0, rng);
    for (std::size_t j = 0; j < n_off && net.size() < count; ++j) {
      const double t = n_off == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(n_off - 1);
      net.push_back(Hypothesis::linear(w, -W + 2.0 * W * t));
    }
  }
  return net;
}

std::size_t stipulation1_failures(const ShatterFamily& fam, std::span<const Hypothesis> net) {
  std::size_t failures = 0;
  for (const auto& h : net) {
    bool positive = false;
    for (const auto& cell : fam.cells) {
      for (const auto& z : cell) {
        if (predict(h, z) == Label::kPositive) {
          positive = true;
          break;
        }
      }
      if (positive) break;
    }
    if (!positive) ++failures;
  }
  return failures;
}

std::size_t stipulation2_failures(const ShatterFamily& fam) {
  std::size_t failures = 0;
  for (std::size_t i = 0; i < fam.M; ++i) {
    for (std::size_t j = 0; j < fam.M; ++j) {
      if (i == j) continue;
      for (const auto& z : fam.cells[j]) {
        if (predict(fam.witnesses[i], z) != Label::kNegative) ++failures;
      }
    }
  }
  return failures;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

double cross_loss_formula(std::span<const std::size_t> t, std::span<const std::size_t> t_prime, std::size_t m) {
  std::size_t common = 0;
  for (auto a : t) common += static_cast<std::size_t>(std::count(t_prime.begin(), t_prime.end(), a));
  return 0.5 - static_cast<double>(common) / (2.0 * static_cast<double>(m));
}

bool Thm2Instance::in_subset(std::size_t t, std::size_t i) const {
  return std::binary_search(subsets[t].begin(), subsets[t].end(), i);
}

DiscreteDistribution Thm2Instance::distribution_for(std::size_t t) const {
  std::vector<LabeledExample> support;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (!in_subset(t, i)) support.push_back(example(i));
  }
  return DiscreteDistribution::uniform(std::move(support));
}

Thm2Instance build_thm2_instance(std::size_t m, double W, std::size_t d, Seed seed, const Thm2Options& opts) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  Thm2Instance inst;
  inst.m = m;
  const std::size_t n = 3 * m;
  inst.M = binomial(n, m);
  inst.subsets = k_subsets(n, m);
  inst.shatter = build_shatter_family(W, d, inst.M, seed_derive(seed, "shatter"), opts.shatter);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vector> pts;
    std::size_t first_cell = inst.M;
    for (std::size_t t = 0; t < inst.M; ++t) {
      if (!inst.in_subset(t, i)) continue;
      if (first_cell == inst.M) first_cell = t;
      pts.insert(pts.end(), inst.shatter.cells[t].begin(), inst.shatter.cells[t].end());
    }
    const auto& cell = inst.shatter.cells[first_cell];
    // A distinct sample of the anchor's first cell, so anchors never collide.
    inst.anchors.push_back(cell[(1 + i) % cell.size()]);
    inst.regions.push_back(Region::points(std::move(pts)));
    inst.family.assign(inst.anchors.back(), inst.regions.back());
  }

  inst.witness_anchor_loss.assign(inst.M, std::vector<int>(n, 0));
  for (std::size_t t = 0; t < inst.M; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      inst.witness_anchor_loss[t][i] = robust_loss_point(inst.witness(t), inst.regions[i], inst.example(i));
      if (!inst.in_subset(t, i) && inst.witness_anchor_loss[t][i] != 0) {
        throw std::logic_error("witness " + std::to_string(t) + " is not robust at anchor " + std::to_string(i));
      }
    }
  }

  for (const auto& h : bounded_linear_net(W, d, opts.audit_net, seed_derive(seed, "audit-net"))) {
    std::vector<bool> lossy(n);
    for (std::size_t i = 0; i < n; ++i) lossy[i] = robust_loss_point(h, inst.regions[i], inst.example(i)) == 1;
    const bool covers_subset = std::any_of(inst.subsets.begin(), inst.subsets.end(), [&](const auto& t) {
      return std::all_of(t.begin(), t.end(), [&](std::size_t i) { return lossy[i]; });
    });
    if (!covers_subset) throw std::logic_error("net hypothesis is robust on every full subset");
  }
  return inst;
}

Learner rerm_over_witnesses() {
  return [](const Thm2Instance& inst, const TrialView& view, Rng&) {
    std::size_t best = 0;
    std::size_t best_loss = std::numeric_limits<std::size_t>::max();
    for (std::size_t t = 0; t < inst.M; ++t) {
      std::size_t loss = 0;
      for (auto i : view.observed) loss += static_cast<std::size_t>(inst.witness_anchor_loss[t][i]);
      if (loss < best_loss) {
        best_loss = loss;
        best = t;
      }
    }
    return best;
  };
}

Learner random_consistent() {
  return [](const Thm2Instance& inst, const TrialView& view, Rng& rng) {
    std::vector<std::size_t> consistent;
    for (std::size_t t = 0; t < inst.M; ++t) {
      bool ok = true;
      for (auto i : view.observed) ok = ok && inst.witness_anchor_loss[t][i] == 0;
      if (ok) consistent.push_back(t);
    }
    if (consistent.empty()) return rerm_over_witnesses()(inst, view, rng);
    return consistent[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(consistent.size()))];
  };
}

Learner omniscient() {
  return [](const Thm2Instance&, const TrialView& view, Rng&) { return view.secret; };
}

namespace {

double distribution_loss(const Thm2Instance& inst, std::size_t chosen, std::size_t secret) {
  std::size_t lossy = 0;
  std::size_t support = 0;
  for (std::size_t i = 0; i < inst.num_anchors(); ++i) {
    if (inst.in_subset(secret, i)) continue;
    ++support;
    lossy += static_cast<std::size_t>(inst.witness_anchor_loss[chosen][i]);
  }
  return static_cast<double>(lossy) / static_cast<double>(support);
}

}  // namespace

GameResult run_adversarial_game(const Thm2Instance& inst, const Learner& learner, std::size_t n_samples,
                                std::size_t trials, Seed seed) {
  GameResult res;
  res.trials = trials;
  res.loss_samples.reserve(trials);
  std::size_t above = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<std::size_t> outside;
  std::vector<std::size_t> observed(n_samples);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(seed_derive(seed, "game", trial));
    const auto secret = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(inst.M));
    outside.clear();
    for (std::size_t i = 0; i < inst.num_anchors(); ++i) {
      if (!inst.in_subset(secret, i)) outside.push_back(i);
    }
    for (auto& o : observed) o = outside[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(outside.size()))];
    const std::size_t chosen = learner(inst, TrialView{observed, secret}, rng);
    const double loss = distribution_loss(inst, chosen, secret);
    res.loss_samples.push_back(loss);
    sum += loss;
    sum_sq += loss * loss;
    if (loss > 0.125) ++above;
  }
  const auto n = static_cast<double>(trials);
  res.mean_loss = sum / n;
  res.freq_loss_above_eighth = static_cast<double>(above) / n;
  res.loss_stddev = trials > 1 ? std::sqrt(std::max(0.0, (sum_sq - n * res.mean_loss * res.mean_loss) / (n - 1.0))) : 0.0;
  return res;
}

double exact_expected_loss(const Thm2Instance& inst, const Learner& learner) {
  const std::size_t m = inst.m;
  double total = 0.0;
  std::size_t count = 0;
  std::vector<std::size_t> outside;
  std::vector<std::size_t> observed(m);
  for (std::size_t t = 0; t < inst.M; ++t) {
    outside.clear();
    for (std::size_t i = 0; i < inst.num_anchors(); ++i) {
      if (!inst.in_subset(t, i)) outside.push_back(i);
    }
    std::vector<std::size_t> digits(m, 0);
    for (;;) {
      for (std::size_t k = 0; k < m; ++k) observed[k] = outside[digits[k]];
      Rng rng = make_rng(seed_derive(t, "exact", count));
      total += distribution_loss(inst, learner(inst, TrialView{observed, t}, rng), t);
      ++count;
      std::size_t k = 0;
      while (k < m && ++digits[k] == outside.size()) digits[k++] = 0;
      if (k == m) break;
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace tolrob
