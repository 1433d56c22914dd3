#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tolrob/model.hpp"
#include "tolrob/random.hpp"
#include "tolrob/region.hpp"

namespace tolrob {

/// Two-anchor adversary instance. With D0 = D - 9 gamma, anchors are +-v for
/// v = (D0/2 + 4 gamma) e1 and v' = 2 gamma e1:
///   U_x   = B(x, D0/2)                 U_x^g = B(x, D0/2 + gamma)
///   V_x   = U_x u B(+-v', 5 gamma / 2)  V_x^g = U_x^g u B(+-v', 7 gamma / 2)
/// h1 = sign(<e1, .>), h2 = sign(<e1, .> - D0 - 4 gamma).
struct AppendixBInstance {
  double D = 0.0;
  double gamma = 0.0;
  std::size_t d = 1;
  double D0 = 0.0;
  Vector v;
  Vector v_prime;
  RegionFamily U;
  RegionFamily U_gamma;
  RegionFamily V;
  RegionFamily V_gamma;
  FiniteClass cls;
  DiscreteDistribution distribution;

  const Hypothesis& h1() const { return cls[0]; }
  const Hypothesis& h2() const { return cls[1]; }
  Vector anchor(int sign) const { return sign > 0 ? v : v * -1.0; }
  LabeledExample example(int sign) const { return {anchor(sign), sign > 0 ? Label::kPositive : Label::kNegative}; }
  /// p in U_v^g or U_{-v}^g.
  bool in_u_gamma(const Vector& p) const;
};

/// Center-distance arithmetic for the construction's disjointness and
/// overlap claims.
struct AppendixBGeometry {
  double anchor_distance = 0.0;  // |v - (-v)|
  double u_radius_sum = 0.0;     // D0
  double bump_distance = 0.0;    // |v' - (-v')|
  double bump_radius_sum = 0.0;  // 5 gamma
  bool u_disjoint() const { return anchor_distance > u_radius_sum; }
  bool v_overlap() const { return bump_distance <= bump_radius_sum; }
};

AppendixBInstance build_appendixB(double D, double gamma, std::size_t d);
AppendixBGeometry appendixB_geometry(const AppendixBInstance& inst);

/// [family][hypothesis] with family 0 = U, 1 = V and hypothesis 0 = h1, 1 = h2.
using LossTable = std::array<std::array<double, 2>, 2>;
LossTable loss_table(const AppendixBInstance& inst);

/// (3.5 gamma)^d / D0^d.
double appendixB_bound(const AppendixBInstance& inst);
/// (3.5 gamma)^d / (D0/2 + gamma)^d: the ratio of the bump volume to U_v^g.
double appendixB_corrected_bound(const AppendixBInstance& inst);

struct MeasureAudit {
  std::size_t n_mc = 0;
  double p_hat = 0.0;
  double sigma = 0.0;
  double bound = 0.0;
  double corrected_bound = 0.0;
  std::optional<double> exact;  // d = 1 only
  bool within_bound() const { return p_hat <= bound + 3.0 * sigma; }
  bool within_corrected_bound() const { return p_hat <= corrected_bound + 3.0 * sigma; }
  bool matches_exact() const { return !exact || std::abs(p_hat - *exact) <= 3.0 * sigma; }
};

/// Monte-Carlo V_v^g-uniform mass of V_v^g \ U^g. Throws if n_mc * bound < 10,
/// where the sample cannot resolve the bound.
MeasureAudit measure_bound_audit(const AppendixBInstance& inst, std::size_t n_mc, Seed seed);

/// Exact 1-D length ratio |V_v^g \ U^g| / |V_v^g| from interval arithmetic.
double appendixB_exact_mass_1d(const AppendixBInstance& inst);

struct QuerySweepResult {
  std::vector<std::size_t> budgets;
  std::vector<double> excess_error;
  std::vector<std::pair<double, double>> conf_intervals;
  std::size_t trials = 0;
  std::size_t v_trials = 0;
  // 0-based query index of the first sample outside U^g in each Z = V trial;
  // equal to the largest budget when nothing was detected.
  std::vector<std::size_t> first_detection;
  // Same for Z = U trials; a value below the largest budget would be a bug.
  std::vector<std::size_t> u_first_detection;
  std::size_t queries_plus = 0;
  std::size_t detections_plus = 0;
  std::size_t queries_minus = 0;
  std::size_t detections_minus = 0;
};

/// Z in {U, V} uniformly; queries alternate v, -v and the oracle returns
/// uniform draws from Z's region; the learner outputs h2 iff a draw falls
/// outside U^g. Excess is achieved loss minus OPT_Z.
QuerySweepResult run_query_game(const AppendixBInstance& inst, const std::vector<std::size_t>& budgets,
                                std::size_t trials, Seed seed);

/// Smallest budget k (over all integers up to the largest simulated budget)
/// whose excess error is below `level`; nullopt if never reached.
std::optional<std::size_t> budget_threshold(const QuerySweepResult& res, double level = 0.125);

/// (1/4) (1 - bound)^k.
double query_lower_curve(const AppendixBInstance& inst, std::size_t k);

/// Absolute per-query detection frequency difference between the two anchors
/// and its standard error.
std::pair<double, double> anchor_symmetry(const QuerySweepResult& res);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n, double z = 1.96);

/// Least-squares slope of log(y) on log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tolrob
