#include "tolrob/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tolrob {

namespace {

bool far_from_all(const Vector& p, const std::vector<Vector>& centers, double mesh) {
  const double m2 = mesh * mesh;
  for (const auto& c : centers) {
    if (squared_distance(p, c) <= m2) return false;
  }
  return true;
}

}  // namespace

SphereCover greedy_sphere_cover(std::size_t d, double sphere_radius, double mesh, Seed seed,
                                const SphereCoverOptions& opts) {
  if (d < 2) throw std::invalid_argument("greedy_sphere_cover needs d >= 2");
  if (!(sphere_radius > 0.0) || !(mesh > 0.0)) throw std::invalid_argument("radius and mesh must be positive");

  Rng rng = make_rng(seed_derive(seed, "sphere-cover"));
  Rng probe_rng = make_rng(seed_derive(seed, "sphere-cover-probe"));
  SphereCover cover{sphere_radius, mesh, {}, 0, 0};
  cover.centers.push_back(uniform_on_sphere(d, sphere_radius, rng));

  // mesh >= diameter: the first point already covers the sphere.
  if (mesh >= 2.0 * sphere_radius) {
    cover.certificate_probes = 0;
    return cover;
  }

  auto greedy = [&] {
    std::size_t rejections = 0;
    while (rejections < opts.rejection_factor * cover.centers.size()) {
      Vector p = uniform_on_sphere(d, sphere_radius, rng);
      if (far_from_all(p, cover.centers, mesh)) {
        cover.centers.push_back(std::move(p));
        rejections = 0;
      } else {
        ++rejections;
      }
    }
  };

  for (std::size_t round = 0; round < opts.max_probe_rounds; ++round) {
    greedy();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < opts.probe_batch; ++i) {
      Vector p = uniform_on_sphere(d, sphere_radius, probe_rng);
      if (far_from_all(p, cover.centers, mesh)) {
        ++failures;
        cover.centers.push_back(std::move(p));
      }
    }
    cover.certificate_probes = opts.probe_batch;
    cover.certificate_failures = failures;
    if (failures == 0) break;
  }
  return cover;
}

double grid_cover_constant(std::size_t d) {
  return std::pow(std::sqrt(static_cast<double>(d)) + 2.0, static_cast<double>(d));
}

std::vector<Ball> cover_compact_by_balls(const Region& target, double ball_radius, Seed seed) {
  if (!(ball_radius > 0.0) || !std::isfinite(ball_radius)) throw std::invalid_argument("ball_radius must be > 0");
  const Region region = target.normalized();
  const std::size_t d = region.dim();
  const double diam = diameter(region);
  if (!std::isfinite(diam)) throw std::invalid_argument("target must be bounded");

  if (diam == 0.0) {
    return {Ball(as_balls(region).front().center, ball_radius)};
  }

  // Nearest node of a cubic grid of pitch h is within h*sqrt(d)/2 < ball_radius.
  const double pitch = ball_radius * (2.0 / std::sqrt(static_cast<double>(d))) * (1.0 - 1e-6);
  Rng rng = make_rng(seed_derive(seed, "grid-origin"));
  std::vector<double> origin(d);
  for (auto& o : origin) o = uniform(rng, 0.0, pitch);

  // Enumerate per component box so far-apart unions do not fill the gap.
  std::set<std::vector<std::int64_t>> seen;
  std::vector<Ball> out;
  for (const auto& comp : as_balls(region)) {
    std::vector<std::int64_t> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double reach = comp.radius + ball_radius;
      lo[i] = static_cast<std::int64_t>(std::floor((comp.center[i] - reach - origin[i]) / pitch));
      hi[i] = static_cast<std::int64_t>(std::ceil((comp.center[i] + reach - origin[i]) / pitch));
    }
    std::vector<std::int64_t> idx = lo;
    std::vector<double> c(d);
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) c[i] = origin[i] + static_cast<double>(idx[i]) * pitch;
      Vector node(c);
      if (distance(node, comp.center) <= comp.radius + ball_radius &&
          point_to_region_distance(node, region) <= ball_radius && seen.insert(idx).second) {
        out.emplace_back(std::move(node), ball_radius);
      }
      std::size_t k = 0;
      while (k < d && ++idx[k] > hi[k]) {
        idx[k] = lo[k];
        ++k;
      }
      if (k == d) break;
    }
  }
  return out;
}

}  // namespace tolrob
