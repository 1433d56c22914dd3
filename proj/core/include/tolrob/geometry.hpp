#pragma once

#include <cstddef>
#include <vector>

#include "tolrob/random.hpp"
#include "tolrob/region.hpp"
#include "tolrob/vector.hpp"

namespace tolrob {

/// Maximal mesh-separated point set on a centered sphere.
struct SphereCover {
  double sphere_radius = 0.0;
  double mesh = 0.0;
  std::vector<Vector> centers;

  // Maximality certificate from the last fresh probe batch.
  std::size_t certificate_probes = 0;
  std::size_t certificate_failures = 0;
  bool certified() const { return certificate_failures == 0; }
};

struct SphereCoverOptions {
  // Stop after rejection_factor * |centers| consecutive rejections.
  std::size_t rejection_factor = 10'000;
  std::size_t probe_batch = 100'000;
  std::size_t max_probe_rounds = 8;
};

/// Randomized greedy cover: accept uniform sphere points farther than mesh from
/// every accepted center. Uncovered probe points found by the certificate are
/// appended and the certificate repeated.
SphereCover greedy_sphere_cover(std::size_t d, double sphere_radius, double mesh, Seed seed,
                                const SphereCoverOptions& opts = {});

/// Grid cover of a bounded region by balls of ball_radius. Any target point is
/// within ball_radius of a returned center; centers may lie outside target.
/// The grid origin is jittered by the seed.
std::vector<Ball> cover_compact_by_balls(const Region& target, double ball_radius, Seed seed);

/// C in |cover| <= C * (diam / ball_radius + 1)^d for the grid construction.
double grid_cover_constant(std::size_t d);

}  // namespace tolrob
