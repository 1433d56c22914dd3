#include "tolrob/random.hpp"

#include <cmath>
#include <vector>

namespace tolrob {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Seed seed_derive(Seed master, std::string_view label) {
  return splitmix64(splitmix64(master) ^ fnv1a64(label));
}

Seed seed_derive(Seed master, std::string_view label, std::uint64_t index) {
  return splitmix64(seed_derive(master, label) ^ splitmix64(index + 1));
}

double standard_normal(Rng& rng) {
  // Box-Muller on our own uniforms so streams do not depend on the
  // standard library's distribution implementation.
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vector uniform_on_sphere(std::size_t d, double radius, Rng& rng) {
  std::vector<double> g(d);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& x : g) {
      x = standard_normal(rng);
      n2 += x * x;
    }
  } while (n2 < 1e-300);
  const double s = radius / std::sqrt(n2);
  for (auto& x : g) x *= s;
  return Vector(std::move(g));
}

Vector uniform_in_ball(const Ball& ball, Rng& rng) {
  const std::size_t d = ball.dim();
  const double rho = ball.radius * std::pow(uniform01(rng), 1.0 / static_cast<double>(d));
  return ball.center + uniform_on_sphere(d, rho, rng);
}

}  // namespace tolrob
