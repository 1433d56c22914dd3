#include "tolrob/rerm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tolrob {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

RermResult argmin(const std::vector<Hypothesis>& hs, const RegionFamily& family,
                  std::span<const LabeledExample> s, bool exact) {
  std::size_t best = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double loss = robust_loss_sample(hs[i], family, s);
    if (loss < best_loss) {
      best_loss = loss;
      best = i;
    }
  }
  return RermResult{hs[best], best_loss, best, exact, hs.size()};
}

// Unit normal of the hyperplane through pts (d points in R^d), or nothing if
// the points are affinely dependent.
std::optional<Vector> hyperplane_normal(const std::vector<Vector>& pts, Rng& rng) {
  const std::size_t d = pts.front().dim();
  std::vector<Vector> basis;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    Vector v = pts[j] - pts[0];
    for (const auto& q : basis) v -= dot(v, q) * q;
    const double n = v.norm();
    if (n < 1e-12) return std::nullopt;
    basis.push_back(v * (1.0 / n));
  }
  Vector g = uniform_on_sphere(d, 1.0, rng);
  for (const auto& q : basis) g -= dot(g, q) * q;
  const double n = g.norm();
  if (n < 1e-9) return std::nullopt;
  return g * (1.0 / n);
}

Hypothesis clamp_to_class(const Vector& unit_w, double b, double W) {
  return Hypothesis::linear(unit_w, std::clamp(b, -W, W));
}

}  // namespace

std::vector<Hypothesis> linear_candidates(const LinearCandidates& spec, const RegionFamily& expanded_family,
                                          std::span<const LabeledExample> s, double r) {
  const std::size_t d = spec.cls.d;
  const double W = spec.cls.W;
  Rng rng = make_rng(seed_derive(spec.seed, "linear-candidates"));
  std::vector<Hypothesis> out;
  out.reserve(spec.candidate_budget);

  // Offset sweep steps taken from the region radii present in the sample.
  std::vector<double> radii{r};
  for (const auto& ex : s) {
    for (const auto& b : as_balls(expanded_family.region_for(ex.x))) radii.push_back(b.radius);
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  radii.erase(std::remove(radii.begin(), radii.end(), 0.0), radii.end());
  if (radii.size() > 4) radii = {radii.front(), radii[radii.size() / 2], radii.back()};

  const std::size_t structured_budget = spec.candidate_budget / 2;
  std::size_t tries = 0;
  while (!s.empty() && out.size() < structured_budget && tries < 4 * spec.candidate_budget) {
    ++tries;
    std::vector<Vector> pts;
    for (std::size_t j = 0; j < d; ++j) {
      pts.push_back(s[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(s.size())) % s.size()].x);
    }
    auto normal = d == 1 ? std::optional<Vector>(Vector{1.0}) : hyperplane_normal(pts, rng);
    if (!normal) continue;
    const double b0 = -dot(*normal, pts[0]);
    for (double sign : {1.0, -1.0}) {
      const Vector w = *normal * sign;
      const double b = b0 * sign;
      out.push_back(clamp_to_class(w, b, W));
      for (double step : radii) {
        out.push_back(clamp_to_class(w, b + step, W));
        out.push_back(clamp_to_class(w, b - step, W));
      }
    }
  }
  while (out.size() < spec.candidate_budget) {
    out.push_back(Hypothesis::linear(uniform_on_sphere(d, 1.0, rng), uniform(rng, -W, W)));
  }
  if (out.size() > spec.candidate_budget) out.erase(out.begin() + static_cast<std::ptrdiff_t>(spec.candidate_budget), out.end());
  return out;
}

RermResult rerm_solve(const RermOracle& oracle, const RegionFamily& family, std::span<const LabeledExample> s,
                      double r) {
  if (s.empty()) throw std::invalid_argument("rerm_solve needs a nonempty sample");
  if (r < 0.0) throw std::invalid_argument("rerm_solve needs r >= 0");
  const RegionFamily fam = family.expanded(r);
  return std::visit(Overloaded{
                        [&](const ExhaustiveFinite& ex) { return argmin(ex.cls.hypotheses(), fam, s, true); },
                        [&](const LinearCandidates& lc) {
                          if (lc.candidate_budget == 0) throw std::invalid_argument("empty candidate class");
                          return argmin(linear_candidates(lc, fam, s, r), fam, s, false);
                        },
                    },
                    oracle.strategy());
}

double tolrerm_radius(double eps, double delta, double gamma, Seed seed) {
  Rng r_rng = make_rng(seed_derive(seed, "r"));
  return uniform(r_rng, tolrerm_alpha(eps, delta, gamma), gamma);
}

std::vector<LabeledExample> tolrerm_sample(const DiscreteDistribution& dist, std::size_t n, Seed seed) {
  Rng s_rng = make_rng(seed_derive(seed, "S"));
  return dist.sample(n, s_rng);
}

TolRermResult tolrerm(const RermOracle& oracle, const RegionFamily& family, const DiscreteDistribution& dist,
                      double eps, double delta, double gamma, std::size_t n, Seed seed) {
  if (!(eps > 0.0 && eps <= 1.0 && delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("tolrerm needs 0 < eps, delta <= 1");
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("tolrerm needs gamma > 0");
  if (n == 0) throw std::invalid_argument("tolrerm needs n >= 1");
  const double r = tolrerm_radius(eps, delta, gamma, seed);
  auto sample = tolrerm_sample(dist, n, seed);
  auto fit = rerm_solve(oracle, family, sample, r);
  return TolRermResult{std::move(fit), r, std::move(sample)};
}

bool OptProfile::monotone() const {
  return std::is_sorted(opt_values.begin(), opt_values.end());
}

OptProfile opt_profile(const RermOracle& oracle, const RegionFamily& family, std::span<const LabeledExample> s,
                       std::span<const double> r_grid) {
  if (!std::is_sorted(r_grid.begin(), r_grid.end()) ||
      std::adjacent_find(r_grid.begin(), r_grid.end()) != r_grid.end()) {
    throw std::invalid_argument("r_grid must be strictly increasing");
  }
  if (!r_grid.empty() && r_grid.front() < 0.0) throw std::invalid_argument("r_grid must be nonnegative");
  OptProfile p;
  p.r_grid.assign(r_grid.begin(), r_grid.end());
  for (double r : r_grid) p.opt_values.push_back(rerm_solve(oracle, family, s, r).achieved_loss);
  return p;
}

double critical_expansion(const Hypothesis& h, const Region& region, const LabeledExample& ex, double r_max) {
  auto lossy = [&](double r) { return robust_loss_point(h, r == 0.0 ? region : expand(region, r), ex) == 1; };
  if (lossy(0.0)) return 0.0;
  if (!lossy(r_max)) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = r_max;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (lossy(mid) ? hi : lo) = mid;
  }
  return hi;
}

StepProfile::StepProfile(const FiniteClass& cls, const RegionFamily& family, std::span<const LabeledExample> s,
                         double r_max)
    : n_(s.size()) {
  if (s.empty()) throw std::invalid_argument("StepProfile needs a nonempty sample");
  for (const auto& h : cls.hypotheses()) {
    std::vector<double> t;
    t.reserve(s.size());
    for (const auto& ex : s) t.push_back(critical_expansion(h, family.region_for(ex.x), ex, r_max));
    std::sort(t.begin(), t.end());
    thresholds_.push_back(std::move(t));
  }
}

double StepProfile::operator()(double r) const {
  std::size_t best = n_;
  for (const auto& t : thresholds_) {
    const auto lossy = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), r) - t.begin());
    best = std::min(best, lossy);
  }
  return static_cast<double>(best) / static_cast<double>(n_);
}

Lemma4Report lemma4_audit(const std::function<double(double)>& profile, double eps, double delta, double gamma,
                          std::size_t trials, Seed seed) {
  if (trials < 100) throw std::invalid_argument("lemma4_audit needs at least 100 trials");
  Lemma4Report rep;
  rep.trials = trials;
  rep.alpha = tolrerm_alpha(eps, delta, gamma);
  rep.gap_bound = rep.alpha / (gamma - rep.alpha);
  rep.markov_bound = delta * eps / 6.0;
  Rng rng = make_rng(seed_derive(seed, "lemma4"));
  std::size_t good = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double r = uniform(rng, rep.alpha, gamma);
    const double gap = profile(r) - profile(r - rep.alpha);
    if (gap <= eps / 3.0) ++good;
    sum += gap;
    sum_sq += gap * gap;
  }
  const auto n = static_cast<double>(trials);
  rep.frequency = static_cast<double>(good) / n;
  rep.mean_gap = sum / n;
  rep.gap_stddev = std::sqrt(std::max(0.0, (sum_sq - n * rep.mean_gap * rep.mean_gap) / (n - 1.0)));
  return rep;
}

}  // namespace tolrob
