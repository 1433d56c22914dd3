#pragma once

#include <cstddef>
#include <vector>

#include "tolrob/model.hpp"
#include "tolrob/random.hpp"
#include "tolrob/region.hpp"

namespace tolrob::harness {

/// A finite-support learning task in the plane: a regular finite class
/// (halfplanes plus disks of radius >= 1), a family mixing ball, two-ball and
/// point-cloud regions, and a noisy halfplane labelling.
struct FiniteTask {
  FiniteClass cls;
  RegionFamily family;
  DiscreteDistribution dist;
};

struct FiniteTaskOptions {
  std::size_t support = 12;
  std::size_t linear_hypotheses = 18;
  std::size_t disk_hypotheses = 6;
  double label_noise = 0.15;
};

FiniteTask random_finite_task(Seed seed, const FiniteTaskOptions& opts = {});

/// min over the class of the distributional robust loss under `family`.
double class_optimum(const FiniteClass& cls, const RegionFamily& family, const DiscreteDistribution& dist);

/// A random base region in the plane near the origin: a ball, a union of two
/// balls or a small point cloud, chosen by `kind` modulo 3.
Region random_base_region(std::size_t kind, Rng& rng);

/// A random hypothesis that is alpha-regular: a halfplane, or a disk whose
/// radius is at least alpha.
Hypothesis random_regular_hypothesis(double alpha, Rng& rng);

}  // namespace tolrob::harness
