#include "tolrob/oracle_game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tolrob {

bool AppendixBInstance::in_u_gamma(const Vector& p) const {
  const double r = D0 / 2.0 + gamma + kGeomTol;
  return distance(p, v) <= r || distance(p, v * -1.0) <= r;
}

AppendixBInstance build_appendixB(double D, double gamma, std::size_t d) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(D > 10.0 * gamma)) throw std::invalid_argument("need D > 10 gamma");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  const double D0 = D - 9.0 * gamma;
  const Vector e1 = Vector::unit(d, 0);
  const Vector v = e1 * (D0 / 2.0 + 4.0 * gamma);
  const Vector vp = e1 * (2.0 * gamma);

  RegionFamily U, Ug, V, Vg;
  for (int sign : {1, -1}) {
    const Vector x = v * static_cast<double>(sign);
    const Vector xp = vp * static_cast<double>(sign);
    U.assign(x, Region::ball(x, D0 / 2.0));
    Ug.assign(x, Region::ball(x, D0 / 2.0 + gamma));
    V.assign(x, Region::balls({Ball(x, D0 / 2.0), Ball(xp, 2.5 * gamma)}));
    Vg.assign(x, Region::balls({Ball(x, D0 / 2.0 + gamma), Ball(xp, 3.5 * gamma)}));
  }
  FiniteClass cls({Hypothesis::linear(e1, 0.0), Hypothesis::linear(e1, -(D0 + 4.0 * gamma))});
  DiscreteDistribution dist = DiscreteDistribution::uniform({{v, Label::kPositive}, {v * -1.0, Label::kNegative}});
  return AppendixBInstance{D,  gamma,        d, D0, v, vp, std::move(U), std::move(Ug), std::move(V), std::move(Vg),
                           std::move(cls), std::move(dist)};
}

AppendixBGeometry appendixB_geometry(const AppendixBInstance& inst) {
  AppendixBGeometry g;
  g.anchor_distance = distance(inst.v, inst.v * -1.0);
  g.u_radius_sum = inst.D0;
  g.bump_distance = distance(inst.v_prime, inst.v_prime * -1.0);
  g.bump_radius_sum = 5.0 * inst.gamma;
  return g;
}

LossTable loss_table(const AppendixBInstance& inst) {
  LossTable t{};
  const RegionFamily* fams[2] = {&inst.U, &inst.V};
  for (std::size_t f = 0; f < 2; ++f) {
    for (std::size_t h = 0; h < 2; ++h) t[f][h] = robust_loss_distribution(inst.cls[h], *fams[f], inst.distribution);
  }
  return t;
}

double appendixB_bound(const AppendixBInstance& inst) {
  return std::pow(3.5 * inst.gamma / inst.D0, static_cast<double>(inst.d));
}

double appendixB_corrected_bound(const AppendixBInstance& inst) {
  return std::pow(3.5 * inst.gamma / (inst.D0 / 2.0 + inst.gamma), static_cast<double>(inst.d));
}

namespace {

using Interval = std::pair<double, double>;

double union_length(std::vector<Interval> iv) {
  std::sort(iv.begin(), iv.end());
  double total = 0.0;
  double lo = iv.front().first;
  double hi = iv.front().second;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].first > hi) {
      total += hi - lo;
      lo = iv[i].first;
    }
    hi = std::max(hi, iv[i].second);
  }
  return total + hi - lo;
}

std::vector<Interval> intervals_of(const Region& r) {
  std::vector<Interval> out;
  for (const auto& b : as_balls(r)) out.emplace_back(b.center[0] - b.radius, b.center[0] + b.radius);
  return out;
}

}  // namespace

double appendixB_exact_mass_1d(const AppendixBInstance& inst) {
  if (inst.d != 1) throw std::invalid_argument("exact interval mass needs d = 1");
  const auto vg = intervals_of(inst.V_gamma.region_for(inst.v));
  std::vector<Interval> ug;
  for (int sign : {1, -1}) {
    const auto part = intervals_of(inst.U_gamma.region_for(inst.anchor(sign)));
    ug.insert(ug.end(), part.begin(), part.end());
  }
  auto both = vg;
  both.insert(both.end(), ug.begin(), ug.end());
  // |A \ B| = |A u B| - |B|
  return (union_length(both) - union_length(ug)) / union_length(vg);
}

MeasureAudit measure_bound_audit(const AppendixBInstance& inst, std::size_t n_mc, Seed seed) {
  if (inst.d > 4) throw std::invalid_argument("measure audit supports d <= 4");
  MeasureAudit a;
  a.n_mc = n_mc;
  a.bound = appendixB_bound(inst);
  a.corrected_bound = appendixB_corrected_bound(inst);
  RegionSampler sampler(inst.V_gamma.region_for(inst.v));
  Rng rng = make_rng(seed_derive(seed, "measure"));
  std::size_t outside = 0;
  for (std::size_t i = 0; i < n_mc; ++i) {
    if (!inst.in_u_gamma(sampler.sample(rng))) ++outside;
  }
  const double n = static_cast<double>(n_mc);
  a.p_hat = n_mc == 0 ? 0.0 : static_cast<double>(outside) / n;
  // Binomial sigma, floored at the one-count resolution so p_hat = 0 is not
  // reported as exact.
  const double p = std::max(a.p_hat, 1.0 / std::max(n, 1.0));
  a.sigma = n_mc == 0 ? INFINITY : std::sqrt(p * (1.0 - p) / n);
  if (n * a.bound < 10.0) throw std::invalid_argument("Monte-Carlo sigma too large: increase n_mc");
  if (inst.d == 1) a.exact = appendixB_exact_mass_1d(inst);
  return a;
}

QuerySweepResult run_query_game(const AppendixBInstance& inst, const std::vector<std::size_t>& budgets,
                                std::size_t trials, Seed seed) {
  if (budgets.empty()) throw std::invalid_argument("no budgets");
  if (!std::is_sorted(budgets.begin(), budgets.end()) ||
      std::adjacent_find(budgets.begin(), budgets.end()) != budgets.end()) {
    throw std::invalid_argument("budgets must be strictly increasing");
  }
  if (trials == 0) throw std::invalid_argument("trials must be > 0");
  QuerySweepResult res;
  res.budgets = budgets;
  res.trials = trials;
  const std::size_t cap = budgets.back();
  // Draws from U never leave U^g, so U trials are probed for a short prefix
  // only; a detection there is still recorded.
  const std::size_t u_probe = std::min<std::size_t>(cap, 256);

  RegionSampler u_plus(inst.U.region_for(inst.anchor(1)));
  RegionSampler u_minus(inst.U.region_for(inst.anchor(-1)));
  RegionSampler v_plus(inst.V.region_for(inst.anchor(1)));
  RegionSampler v_minus(inst.V.region_for(inst.anchor(-1)));

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed_derive(seed, "query-trial", t));
    const bool z_is_v = uniform01(rng) < 0.5;
    RegionSampler& plus = z_is_v ? v_plus : u_plus;
    RegionSampler& minus = z_is_v ? v_minus : u_minus;
    const std::size_t limit = z_is_v ? cap : u_probe;
    std::size_t first = cap;
    for (std::size_t q = 0; q < limit; ++q) {
      const bool at_plus = q % 2 == 0;
      const bool detected = !inst.in_u_gamma((at_plus ? plus : minus).sample(rng));
      if (z_is_v) {
        (at_plus ? res.queries_plus : res.queries_minus) += 1;
        if (detected) (at_plus ? res.detections_plus : res.detections_minus) += 1;
      }
      if (detected) {
        first = q;
        break;
      }
    }
    (z_is_v ? res.first_detection : res.u_first_detection).push_back(first);
  }
  res.v_trials = res.first_detection.size();

  for (auto k : budgets) {
    // Excess 1/2 for Z = V without detection (h1: 1 vs OPT 1/2) and for
    // Z = U with detection (h2: 1/2 vs OPT 0).
    std::size_t bad = 0;
    for (auto f : res.first_detection) bad += f >= k ? 1 : 0;
    for (auto f : res.u_first_detection) bad += f < k ? 1 : 0;
    res.excess_error.push_back(0.5 * static_cast<double>(bad) / static_cast<double>(trials));
    const auto [lo, hi] = wilson_interval(bad, trials);
    res.conf_intervals.emplace_back(0.5 * lo, 0.5 * hi);
  }
  return res;
}

std::optional<std::size_t> budget_threshold(const QuerySweepResult& res, double level) {
  auto v = res.first_detection;
  auto u = res.u_first_detection;
  std::sort(v.begin(), v.end());
  std::sort(u.begin(), u.end());
  const std::size_t cap = res.budgets.back();
  for (std::size_t k = 0; k <= cap; ++k) {
    const auto v_undetected = static_cast<std::size_t>(v.end() - std::lower_bound(v.begin(), v.end(), k));
    const auto u_detected = static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), k) - u.begin());
    const double excess = 0.5 * static_cast<double>(v_undetected + u_detected) / static_cast<double>(res.trials);
    if (excess < level) return k;
  }
  return std::nullopt;
}

double query_lower_curve(const AppendixBInstance& inst, std::size_t k) {
  return 0.25 * std::pow(1.0 - appendixB_bound(inst), static_cast<double>(k));
}

std::pair<double, double> anchor_symmetry(const QuerySweepResult& res) {
  const auto n1 = static_cast<double>(res.queries_plus);
  const auto n2 = static_cast<double>(res.queries_minus);
  if (n1 == 0.0 || n2 == 0.0) return {0.0, INFINITY};
  const double f1 = static_cast<double>(res.detections_plus) / n1;
  const double f2 = static_cast<double>(res.detections_minus) / n2;
  const double pooled = static_cast<double>(res.detections_plus + res.detections_minus) / (n1 + n2);
  return {std::abs(f1 - f2), std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))};
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs >= 2 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace tolrob
