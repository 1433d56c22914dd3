#include "tolrob/cover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tolrob/geometry.hpp"

namespace tolrob {

namespace {

void check_radii(double r, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(alpha < r)) throw std::invalid_argument("sandwich needs alpha < r");
}

// Bounding ball of a region: used as the regularity probe domain.
Ball enclosing_ball(const Region& r, double margin) {
  const BoundingBox box = bounding_box(r);
  std::vector<double> c(box.lo.size());
  double half_diag = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = 0.5 * (box.lo[i] + box.hi[i]);
    half_diag += 0.25 * (box.hi[i] - box.lo[i]) * (box.hi[i] - box.lo[i]);
  }
  return Ball(Vector(c), std::sqrt(half_diag) + margin);
}

}  // namespace

std::size_t SandwichTriple::middle_count() const {
  const Region n = middle.normalized();
  if (const auto* f = std::get_if<FinitePoints>(&n.variant())) return f->points.size();
  return as_balls(n).size();
}

double sandwich_count_constant(std::size_t d) {
  return std::pow(2.0 * (std::sqrt(static_cast<double>(d)) + 2.0), static_cast<double>(d));
}

double SandwichTriple::count_bound() const {
  const std::size_t d = upper.dim();
  return sandwich_count_constant(d) *
         std::pow(base_diameter / alpha + 2.0 * r / alpha + 1.0, static_cast<double>(d));
}

SandwichTriple build_v_lemma5(const Region& base, double r, double alpha, Seed seed) {
  check_radii(r, alpha);
  Region upper = expand(base, r);
  std::vector<Vector> kept;
  for (auto& b : cover_compact_by_balls(upper, alpha / 2.0, seed)) {
    if (contains(upper, b.center)) kept.push_back(std::move(b.center));
  }
  if (kept.empty()) throw std::runtime_error("grid cover left no center inside U^r");
  return SandwichTriple{SandwichKind::kFinitePoints, expand(base, r - alpha), Region::points(std::move(kept)),
                        std::move(upper), alpha, r, diameter(base)};
}

SandwichTriple build_v_lemmaD1(const Region& base, double r, double alpha, Seed seed) {
  check_radii(r, alpha);
  Region lower = expand(base, r - alpha);
  // The grid keeps only nodes within alpha/2 of the lower set, i.e. balls
  // that intersect U^{r-alpha}.
  Region middle = Region::balls(cover_compact_by_balls(lower, alpha / 2.0, seed));
  return SandwichTriple{SandwichKind::kUnionOfBalls, std::move(lower), std::move(middle), expand(base, r), alpha, r,
                        diameter(base)};
}

bool SandwichReport::clean() const {
  for (const auto& v : violations) {
    if (v.certified) return false;
  }
  return true;
}

SandwichReport sandwich_audit(const SandwichTriple& triple, std::span<const Hypothesis> hypotheses,
                              std::span<const LabeledExample> examples, const SandwichAuditOptions& opts) {
  SandwichReport rep;
  const Ball domain = enclosing_ball(triple.upper, triple.alpha);
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (triple.kind == SandwichKind::kUnionOfBalls) {
      // Set inclusion alone gives both inequalities; no regularity needed.
      rep.regular.push_back(true);
    } else {
      const auto cert =
          regularity_check(hypotheses[i], triple.alpha, opts.regularity_probes, domain, seed_derive(opts.seed, "h", i));
      rep.regular.push_back(cert.passed());
    }
  }
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    for (std::size_t j = 0; j < examples.size(); ++j) {
      const auto& h = hypotheses[i];
      const auto& ex = examples[j];
      const int lo = robust_loss_point(h, triple.lower, ex);
      const int mid = robust_loss_point(h, triple.middle, ex);
      const int up = robust_loss_point(h, triple.upper, ex);
      ++rep.checked;
      if (lo > mid || mid > up) {
        rep.violations.push_back({i, j, lo, mid, up, lo > mid, mid > up, rep.regular[i]});
      }
    }
  }
  return rep;
}

InclusionAudit set_inclusion_audit(const SandwichTriple& triple, std::size_t probes, Seed seed) {
  InclusionAudit a;
  Rng rng = make_rng(seed_derive(seed, "inclusion"));
  auto check = [&](const Vector& p) {
    ++a.probes;
    // A finite middle is not a superset of the lower set; only D.1 claims that.
    if (triple.kind == SandwichKind::kUnionOfBalls && contains(triple.lower, p) && !contains(triple.middle, p)) {
      ++a.lower_not_in_middle;
    }
    if (contains(triple.middle, p) && !contains(triple.upper, p)) ++a.middle_not_in_upper;
  };
  const bool middle_has_volume = triple.kind == SandwichKind::kUnionOfBalls;
  RegionSampler lower(triple.lower);
  std::optional<RegionSampler> middle;
  if (middle_has_volume) middle.emplace(triple.middle);
  const BoundingBox box = bounding_box(triple.upper);
  std::vector<double> c(box.lo.size());
  for (std::size_t i = 0; i < probes; ++i) {
    switch (i % 3) {
      case 0:
        check(lower.sample(rng));
        break;
      case 1:
        if (middle) {
          check(middle->sample(rng));
          break;
        }
        [[fallthrough]];
      default:
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = uniform(rng, box.lo[k] - triple.alpha, box.hi[k] + triple.alpha);
        check(Vector(c));
    }
  }
  if (!middle_has_volume) {
    for (const auto& b : as_balls(triple.middle)) check(b.center);
  }
  return a;
}

NegativeControl sandwich_negative_control(Seed seed) {
  SandwichTriple triple = build_v_lemma5(Region::ball(Vector::zeros(2), 1.0), 1.0, 0.5, seed);
  const auto& middle = std::get<FinitePoints>(triple.middle.variant()).points;
  Rng rng = make_rng(seed_derive(seed, "flip"));
  const Ball lower(Vector::zeros(2), 1.5);
  Vector flipped = uniform_in_ball(lower, rng);
  for (;;) {
    double gap = INFINITY;
    for (const auto& m : middle) gap = std::min(gap, distance(flipped, m));
    if (gap > 1e-3) break;
    flipped = uniform_in_ball(lower, rng);
  }
  const std::pair<Vector, Label> entry{flipped, Label::kNegative};
  Hypothesis h = Hypothesis::table(std::span(&entry, 1), Label::kPositive, 2);
  LabeledExample ex{Vector::zeros(2), Label::kPositive};
  SandwichReport report = sandwich_audit(triple, std::span(&h, 1), std::span(&ex, 1), {.regularity_probes = 200, .seed = seed});
  return NegativeControl{std::move(triple), std::move(h), std::move(ex), std::move(report)};
}

}  // namespace tolrob
