#include "tolrob/robust_vc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tolrob {

LossMatrix::LossMatrix(const FiniteClass& cls, const RegionFamily& family, std::span<const LabeledExample> universe)
    : n_(universe.size()) {
  std::vector<Region> regions;
  regions.reserve(n_);
  for (const auto& ex : universe) regions.push_back(family.region_for(ex.x));
  rows_.assign(cls.size(), std::vector<std::uint64_t>((n_ + 63) / 64, 0));
  for (std::size_t h = 0; h < cls.size(); ++h) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (robust_loss_point(cls[h], regions[i], universe[i]) == 1) rows_[h][i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
}

Pattern LossMatrix::pattern(std::size_t h, std::span<const std::size_t> subset) const {
  if (subset.size() > 64) throw std::invalid_argument("patterns are limited to 64 elements");
  Pattern p = 0;
  for (std::size_t j = 0; j < subset.size(); ++j) p |= static_cast<Pattern>(loss(h, subset[j])) << j;
  return p;
}

namespace {

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

std::size_t distinct_patterns(const LossMatrix& losses, std::span<const std::size_t> subset,
                              std::vector<Pattern>& scratch) {
  scratch.clear();
  for (std::size_t h = 0; h < losses.hypotheses(); ++h) scratch.push_back(losses.pattern(h, subset));
  std::sort(scratch.begin(), scratch.end());
  return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

// Advances a sorted k-combination of {0..n-1}; false after the last one.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::vector<Vector> region_points(const Region& r) {
  const Region n = r.normalized();
  if (const auto* fp = std::get_if<FinitePoints>(&n.variant())) return fp->points;
  if (const auto* b = std::get_if<Ball>(&n.variant()); b && b->radius == 0.0) return {b->center};
  throw UnsupportedPair("inflated point sets need finite regions");
}

std::vector<Vector> inflated_points(const RegionFamily& family, std::span<const LabeledExample> sample) {
  std::vector<Vector> t;
  for (const auto& ex : sample) {
    auto pts = region_points(family.region_for(ex.x));
    t.insert(t.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
  }
  return t;
}

std::vector<std::uint8_t> labeling(const Hypothesis& h, std::span<const Vector> pts) {
  std::vector<std::uint8_t> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(predict(h, p) == Label::kPositive ? 1 : 0);
  return out;
}

}  // namespace

std::set<Pattern> loss_patterns(const FiniteClass& cls, const RegionFamily& family,
                                std::span<const LabeledExample> sample) {
  const LossMatrix losses(cls, family, sample);
  const auto idx = iota_indices(sample.size());
  std::set<Pattern> out;
  for (std::size_t h = 0; h < cls.size(); ++h) out.insert(losses.pattern(h, idx));
  return out;
}

ShatterReport shatter_report(const LossMatrix& losses, std::span<const LabeledExample> universe,
                             std::span<const std::size_t> subset) {
  ShatterReport rep;
  for (auto i : subset) rep.sample.push_back(universe[i]);
  for (std::size_t h = 0; h < losses.hypotheses(); ++h) rep.witness_map.emplace(losses.pattern(h, subset), h);
  rep.achieved_patterns = rep.witness_map.size();
  rep.shattered = subset.size() < 64 && rep.achieved_patterns == (std::size_t{1} << subset.size());
  return rep;
}

VcEstimate vc_search(const LossMatrix& losses, std::size_t max_m, const VcSearchOptions& opts) {
  VcEstimate est;
  const std::size_t n = losses.universe_size();
  const std::size_t top = std::min({max_m, n, std::size_t{63}});
  std::vector<Pattern> scratch;
  for (std::size_t m = 1; m <= top; ++m) {
    if ((std::size_t{1} << m) > losses.hypotheses()) {
      est.dimension_upper = m - 1;
      return est;
    }
    auto comb = iota_indices(m);
    bool found = false;
    do {
      if (est.subsets_scanned == opts.budget) {
        est.budget_exceeded = true;
        return est;
      }
      ++est.subsets_scanned;
      const std::size_t count = distinct_patterns(losses, comb, scratch);
      if (opts.on_subset) opts.on_subset(comb, count);
      if (count == (std::size_t{1} << m)) {
        found = true;
        est.witness_subset = comb;
      }
    } while (!found && next_combination(comb, n));
    if (!found) {
      est.dimension_upper = m - 1;
      return est;
    }
    est.dimension_lower = m;
  }
  if (top == n) est.dimension_upper = n;
  return est;
}

VcEstimate robust_vc_search(const FiniteClass& cls, const RegionFamily& family,
                            std::span<const LabeledExample> universe, std::size_t max_m, const VcSearchOptions& opts) {
  return vc_search(LossMatrix(cls, family, universe), max_m, opts);
}

VcEstimate ordinary_vc(const FiniteClass& cls, std::span<const Vector> points, std::size_t max_m,
                       std::size_t budget) {
  // With singleton regions and every label -1, the loss bit is predict == +1.
  std::vector<LabeledExample> ex;
  for (const auto& p : points) ex.push_back({p, Label::kNegative});
  VcSearchOptions opts;
  opts.budget = budget;
  return vc_search(LossMatrix(cls, RegionFamily::with_default_ball(0.0), ex), max_m, opts);
}

ShatterReport vball_shatter_check(const FiniteClass& cls, double r, std::span<const LabeledExample> candidate) {
  const LossMatrix losses(cls, RegionFamily::with_default_ball(r), candidate);
  return shatter_report(losses, candidate, iota_indices(candidate.size()));
}

double sauer_bound(std::size_t n, std::size_t v) {
  double total = 0.0;
  double c = 1.0;
  for (std::size_t i = 0; i <= std::min(n, v); ++i) {
    total += c;
    c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return total;
}

std::size_t inflated_labelings(const FiniteClass& cls, const RegionFamily& family,
                               std::span<const LabeledExample> sample) {
  const auto t = inflated_points(family, sample);
  std::set<std::vector<std::uint8_t>> seen;
  for (const auto& h : cls.hypotheses()) seen.insert(labeling(h, t));
  return seen.size();
}

std::size_t correspondence_violations(const FiniteClass& cls, const RegionFamily& family,
                                      std::span<const LabeledExample> sample) {
  const auto t = inflated_points(family, sample);
  const LossMatrix losses(cls, family, sample);
  const auto idx = iota_indices(sample.size());
  std::map<std::vector<std::uint8_t>, Pattern> group;
  std::size_t violations = 0;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    const Pattern p = losses.pattern(h, idx);
    const auto [it, inserted] = group.emplace(labeling(cls[h], t), p);
    if (!inserted && it->second != p) ++violations;
  }
  return violations;
}

namespace {

std::vector<double> cuts_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> cuts{xs.front() - 1.0};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i + 1] > xs[i]) cuts.push_back(0.5 * (xs[i] + xs[i + 1]));
  }
  cuts.push_back(xs.back() + 1.0);
  return cuts;
}

}  // namespace

OverheadInstance default_overhead_instance(std::size_t d, std::size_t k, Seed seed) {
  if (d < 1 || d > 3) throw std::invalid_argument("default overhead instances cover d in {1, 2, 3}");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  constexpr std::size_t kUniverse = 10;
  constexpr double kSpread = 0.3;
  Rng rng = make_rng(seed_derive(seed, "overhead", d * 1000 + k));
  const std::size_t dim = d == 3 ? 2 : 1;

  std::vector<LabeledExample> universe;
  RegionFamily family;
  std::vector<Vector> points;
  for (std::size_t i = 0; i < kUniverse; ++i) {
    Vector x = dim == 1 ? Vector{uniform(rng, 0.0, 10.0)} : Vector{uniform(rng, 0.0, 10.0), uniform(rng, 0.0, 10.0)};
    std::vector<Vector> cloud;
    for (std::size_t j = 0; j < k; ++j) {
      if (k == 1) {
        cloud.push_back(x);
      } else if (dim == 1) {
        cloud.push_back(x + Vector{kSpread * (static_cast<double>(j) - 0.5 * static_cast<double>(k - 1))});
      } else {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
        cloud.push_back(x + Vector{kSpread * std::cos(a), kSpread * std::sin(a)});
      }
    }
    points.insert(points.end(), cloud.begin(), cloud.end());
    family.assign(x, Region::points(std::move(cloud)), true);
    universe.push_back({std::move(x), uniform01(rng) < 0.5 ? Label::kPositive : Label::kNegative});
  }

  std::vector<Hypothesis> hs;
  if (dim == 1) {
    std::vector<double> xs;
    for (const auto& p : points) xs.push_back(p[0]);
    const auto cuts = cuts_of(xs);
    if (d == 1) {
      for (double c : cuts) hs.push_back(Hypothesis::linear(Vector{1.0}, -c));
    } else {
      for (std::size_t a = 0; a < cuts.size(); ++a) {
        for (std::size_t b = a + 1; b < cuts.size(); ++b) {
          hs.push_back(Hypothesis::sphere(Vector{0.5 * (cuts[a] + cuts[b])}, 0.5 * (cuts[b] - cuts[a]),
                                          Label::kPositive));
        }
      }
      hs.push_back(Hypothesis::sphere(Vector{cuts.back() + 10.0}, 1.0, Label::kPositive));
    }
  } else {
    constexpr std::size_t kAngles = 48;
    for (std::size_t a = 0; a < kAngles; ++a) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(kAngles);
      const Vector w{std::cos(th), std::sin(th)};
      std::vector<double> proj;
      for (const auto& p : points) proj.push_back(dot(w, p));
      for (double c : cuts_of(proj)) hs.push_back(Hypothesis::linear(w, -c));
    }
  }
  return OverheadInstance{FiniteClass(std::move(hs)), std::move(family), std::move(universe), std::move(points)};
}

std::vector<OverheadRow> overhead_audit(std::span<const std::size_t> d_grid, std::span<const std::size_t> k_grid,
                                        const OverheadGenerator& gen, Seed seed, std::size_t max_m) {
  std::vector<OverheadRow> rows;
  for (auto d : d_grid) {
    for (auto k : k_grid) {
      const OverheadInstance inst = gen(d, k, seed_derive(seed, "instance", d * 1000 + k));
      OverheadRow row;
      row.d = d;
      row.k = k;
      const auto base = ordinary_vc(inst.cls, inst.points, 8);
      if (!base.dimension_upper) throw std::runtime_error("ordinary VC not certified");
      row.base_vc = *base.dimension_upper;

      VcSearchOptions opts;
      std::vector<LabeledExample> sub;
      opts.on_subset = [&](std::span<const std::size_t> idx, std::size_t count) {
        sub.clear();
        for (auto i : idx) sub.push_back(inst.universe[i]);
        if (static_cast<double>(count) > sauer_bound(k * idx.size(), row.base_vc)) ++row.sauer_violations;
        row.claim_violations += correspondence_violations(inst.cls, inst.family, sub);
      };
      const auto est = robust_vc_search(inst.cls, inst.family, inst.universe, max_m, opts);
      row.vc_lower = est.dimension_lower;
      row.vc_upper = est.dimension_upper;
      row.scanned = est.subsets_scanned;
      const std::size_t m = est.dimension_upper.value_or(est.dimension_lower);
      row.bound_value = sauer_bound(k * m, row.base_vc);
      row.pass = est.dimension_upper.has_value() && row.sauer_violations == 0 && row.claim_violations == 0 &&
                 std::ldexp(1.0, static_cast<int>(m)) <= row.bound_value;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace tolrob
