#include "tolrob/harness/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tolrob::harness {

namespace {

Vector random_point(Rng& rng, double half_width) {
  return Vector{uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width)};
}

}  // namespace

Region random_base_region(std::size_t kind, Rng& rng) {
  const Vector x = random_point(rng, 1.0);
  switch (kind % 3) {
    case 0:
      return Region::ball(x, uniform(rng, 0.1, 0.6));
    case 1:
      return Region::balls({Ball(x, uniform(rng, 0.1, 0.4)), Ball(x + random_point(rng, 0.8), uniform(rng, 0.1, 0.4))});
    default: {
      std::vector<Vector> pts{x};
      const std::size_t extra = 2 + static_cast<std::size_t>(uniform01(rng) * 3.0);
      for (std::size_t i = 0; i < extra; ++i) pts.push_back(x + random_point(rng, 0.5));
      return Region::points(std::move(pts));
    }
  }
}

Hypothesis random_regular_hypothesis(double alpha, Rng& rng) {
  if (uniform01(rng) < 0.6) return Hypothesis::linear(uniform_on_sphere(2, 1.0, rng), uniform(rng, -1.5, 1.5));
  const double radius = std::max(alpha, uniform(rng, 0.5, 2.0));
  return Hypothesis::sphere(random_point(rng, 1.5), radius,
                            uniform01(rng) < 0.5 ? Label::kPositive : Label::kNegative);
}

FiniteTask random_finite_task(Seed seed, const FiniteTaskOptions& opts) {
  Rng rng = make_rng(seed_derive(seed, "task"));
  const Hypothesis teacher = Hypothesis::linear(uniform_on_sphere(2, 1.0, rng), uniform(rng, -1.0, 1.0));

  RegionFamily family;
  std::vector<DiscreteDistribution::Atom> atoms;
  double total = 0.0;
  for (std::size_t i = 0; i < opts.support; ++i) {
    const Vector x = random_point(rng, 3.0);
    Region region = [&] {
      switch (i % 3) {
        case 0:
          return Region::ball(x, uniform(rng, 0.1, 0.6));
        case 1:
          return Region::balls({Ball(x, uniform(rng, 0.1, 0.4)), Ball(x + random_point(rng, 0.6), uniform(rng, 0.1, 0.3))});
        default:
          return Region::points({x, x + random_point(rng, 0.4), x + random_point(rng, 0.4)});
      }
    }();
    family.assign(x, std::move(region));
    Label y = predict(teacher, x);
    if (uniform01(rng) < opts.label_noise) y = flip(y);
    const double w = uniform(rng, 0.5, 1.5);
    total += w;
    atoms.push_back({{x, y}, w});
  }
  for (auto& a : atoms) a.probability /= total;
  // Renormalize the last atom so the probabilities sum to one exactly.
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) head += atoms[i].probability;
  atoms.back().probability = 1.0 - head;

  std::vector<Hypothesis> hs;
  for (std::size_t i = 0; i < opts.linear_hypotheses; ++i) {
    hs.push_back(Hypothesis::linear(uniform_on_sphere(2, 1.0, rng), uniform(rng, -2.0, 2.0)));
  }
  for (std::size_t i = 0; i < opts.disk_hypotheses; ++i) {
    hs.push_back(Hypothesis::sphere(random_point(rng, 3.0), uniform(rng, 1.0, 3.0),
                                    uniform01(rng) < 0.5 ? Label::kPositive : Label::kNegative));
  }
  return FiniteTask{FiniteClass(std::move(hs)), std::move(family), DiscreteDistribution(std::move(atoms))};
}

double class_optimum(const FiniteClass& cls, const RegionFamily& family, const DiscreteDistribution& dist) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : cls.hypotheses()) best = std::min(best, robust_loss_distribution(h, family, dist));
  return best;
}

}  // namespace tolrob::harness
