#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "tolrob/model.hpp"
#include "tolrob/random.hpp"
#include "tolrob/region.hpp"

namespace tolrob {

/// Bit i of a pattern is the robust loss on sample element i.
using Pattern = std::uint64_t;

/// h^l_U: the {0,1}-valued robust loss of `base` under `family`.
struct LossHypothesis {
  const Hypothesis* base;
  const RegionFamily* family;
  int operator()(const LabeledExample& ex) const { return robust_loss_point(*base, family->region_for(ex.x), ex); }
};

/// Robust loss of every hypothesis on every universe element, stored as one
/// bit row per hypothesis.
class LossMatrix {
 public:
  LossMatrix(const FiniteClass& cls, const RegionFamily& family, std::span<const LabeledExample> universe);

  std::size_t hypotheses() const { return rows_.size(); }
  std::size_t universe_size() const { return n_; }
  bool loss(std::size_t h, std::size_t i) const { return (rows_[h][i / 64] >> (i % 64)) & 1U; }
  Pattern pattern(std::size_t h, std::span<const std::size_t> subset) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::uint64_t>> rows_;
};

/// Distinct robust-loss vectors realized by the class on the sample (<= 64).
std::set<Pattern> loss_patterns(const FiniteClass& cls, const RegionFamily& family,
                                std::span<const LabeledExample> sample);

struct ShatterReport {
  std::vector<LabeledExample> sample;
  std::size_t achieved_patterns = 0;
  bool shattered = false;
  std::map<Pattern, std::size_t> witness_map;  // pattern -> first hypothesis index
};

ShatterReport shatter_report(const LossMatrix& losses, std::span<const LabeledExample> universe,
                             std::span<const std::size_t> subset);

struct VcEstimate {
  std::size_t dimension_lower = 0;
  std::optional<std::size_t> dimension_upper;
  std::size_t subsets_scanned = 0;
  bool budget_exceeded = false;
  std::vector<std::size_t> witness_subset;  // a largest shattered subset
};

struct VcSearchOptions {
  std::size_t budget = 1'000'000;
  // Called for every scanned subset with its distinct-pattern count.
  std::function<void(std::span<const std::size_t>, std::size_t)> on_subset;
};

/// Scans subsets of the universe by increasing size, stopping a size class at
/// its first shattered subset. The upper value is certified when every subset
/// of size lower + 1 was scanned (or ruled out by counting) without success.
VcEstimate robust_vc_search(const FiniteClass& cls, const RegionFamily& family,
                            std::span<const LabeledExample> universe, std::size_t max_m,
                            const VcSearchOptions& opts = {});
VcEstimate vc_search(const LossMatrix& losses, std::size_t max_m, const VcSearchOptions& opts = {});

/// Ordinary VC dimension of the class on a point set (labelling patterns of
/// predict == +1), exhaustive.
VcEstimate ordinary_vc(const FiniteClass& cls, std::span<const Vector> points, std::size_t max_m,
                       std::size_t budget = 1'000'000);

/// Robust shattering with ball regions B(x, r): h_S must have loss exactly 0 on
/// S and 1 off S. witness_map keys are loss patterns (complements of S).
ShatterReport vball_shatter_check(const FiniteClass& cls, double r, std::span<const LabeledExample> candidate);

/// Sauer-Shelah: sum_{i <= v} C(n, i), saturating.
double sauer_bound(std::size_t n, std::size_t v);

/// Distinct labelings of the union of the sample's regions by the base class.
std::size_t inflated_labelings(const FiniteClass& cls, const RegionFamily& family,
                               std::span<const LabeledExample> sample);

/// Pairs of hypotheses with distinct loss patterns on the sample but equal
/// labelings on the union of its regions (must be zero).
std::size_t correspondence_violations(const FiniteClass& cls, const RegionFamily& family,
                                      std::span<const LabeledExample> sample);

struct OverheadInstance {
  FiniteClass cls;
  RegionFamily family;
  std::vector<LabeledExample> universe;
  std::vector<Vector> points;  // every point of every universe region
};

using OverheadGenerator = std::function<OverheadInstance(std::size_t d, std::size_t k, Seed seed)>;

/// d = 1: thresholds on a line; d = 2: intervals on a line; d = 3: halfplanes
/// in the plane. Regions are k-point clouds around each universe point.
OverheadInstance default_overhead_instance(std::size_t d, std::size_t k, Seed seed);

struct OverheadRow {
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t base_vc = 0;
  std::size_t vc_lower = 0;
  std::optional<std::size_t> vc_upper;
  double bound_value = 0.0;  // sauer_bound(k * m, base_vc) at m = certified VC
  std::size_t scanned = 0;
  std::size_t sauer_violations = 0;
  std::size_t claim_violations = 0;
  bool pass = false;
};

std::vector<OverheadRow> overhead_audit(std::span<const std::size_t> d_grid, std::span<const std::size_t> k_grid,
                                        const OverheadGenerator& gen, Seed seed, std::size_t max_m = 6);

}  // namespace tolrob
