#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "tolrob/model.hpp"
#include "tolrob/random.hpp"
#include "tolrob/region.hpp"

namespace tolrob {

/// Exact argmin over a finite class (ties go to the lowest index).
struct ExhaustiveFinite {
  FiniteClass cls;
};

/// Approximate oracle for W-bounded halfspaces: best of a generated candidate
/// set. The achieved loss is always reported; optimality is not claimed.
struct LinearCandidates {
  BoundedLinearClass cls;
  std::size_t candidate_budget = 2000;
  Seed seed = 0;
};

class RermOracle {
 public:
  using Strategy = std::variant<ExhaustiveFinite, LinearCandidates>;

  explicit RermOracle(Strategy s) : strategy_(std::move(s)) {}
  static RermOracle exhaustive(FiniteClass cls) { return RermOracle(ExhaustiveFinite{std::move(cls)}); }

  const Strategy& strategy() const { return strategy_; }
  bool exact() const { return std::holds_alternative<ExhaustiveFinite>(strategy_); }

 private:
  Strategy strategy_;
};

struct RermResult {
  Hypothesis hypothesis;
  double achieved_loss = 0.0;
  std::size_t index = 0;  // position in the class or candidate list
  bool exact = true;
  std::size_t evaluated = 0;
};

/// argmin_h l_{U^r}(h, S); r == 0 uses the family as given.
RermResult rerm_solve(const RermOracle& oracle, const RegionFamily& family, std::span<const LabeledExample> s,
                      double r);

/// The candidate hypotheses LinearCandidates scores for (family^r, S).
std::vector<Hypothesis> linear_candidates(const LinearCandidates& spec, const RegionFamily& expanded_family,
                                          std::span<const LabeledExample> s, double r);

struct TolRermResult {
  RermResult fit;
  double r_used = 0.0;
  std::vector<LabeledExample> sample;
};

/// Draws r ~ Uniform[eps*delta*gamma/7, gamma] and S ~ D^n from independent
/// substreams of `seed`, then returns the oracle's answer on U^r.
TolRermResult tolrerm(const RermOracle& oracle, const RegionFamily& family, const DiscreteDistribution& dist,
                      double eps, double delta, double gamma, std::size_t n, Seed seed);

/// Lower end of the TolRERM radius interval.
inline double tolrerm_alpha(double eps, double delta, double gamma) { return eps * delta * gamma / 7.0; }

/// Draws the first n sample atoms exactly as tolrerm would for this seed.
std::vector<LabeledExample> tolrerm_sample(const DiscreteDistribution& dist, std::size_t n, Seed seed);
double tolrerm_radius(double eps, double delta, double gamma, Seed seed);

struct OptProfile {
  std::vector<double> r_grid;
  std::vector<double> opt_values;
  bool monotone() const;
};

OptProfile opt_profile(const RermOracle& oracle, const RegionFamily& family, std::span<const LabeledExample> s,
                       std::span<const double> r_grid);

/// Smallest expansion at which h loses robustness on ex, found by bisection
/// to ~1e-12 relative; +inf if still robust at r_max, 0 if already lossy.
double critical_expansion(const Hypothesis& h, const Region& region, const LabeledExample& ex, double r_max);

/// r -> OPT_S^r as an exact step function for a finite class, built from the
/// critical expansions of every (hypothesis, example) pair.
class StepProfile {
 public:
  StepProfile(const FiniteClass& cls, const RegionFamily& family, std::span<const LabeledExample> s, double r_max);
  double operator()(double r) const;
  const std::vector<std::vector<double>>& thresholds() const { return thresholds_; }

 private:
  std::vector<std::vector<double>> thresholds_;  // [hypothesis] sorted critical radii
  std::size_t n_ = 0;
};

struct Lemma4Report {
  std::size_t trials = 0;
  double alpha = 0.0;
  double frequency = 0.0;      // fraction with OPT^r - OPT^{r-alpha} <= eps/3
  double mean_gap = 0.0;
  double gap_stddev = 0.0;     // sample standard deviation of the gap
  double gap_bound = 0.0;      // alpha / (gamma - alpha)
  double markov_bound = 0.0;   // delta * eps / 6
};

Lemma4Report lemma4_audit(const std::function<double(double)>& profile, double eps, double delta, double gamma,
                          std::size_t trials, Seed seed);

}  // namespace tolrob
