#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "tolrob/vector.hpp"

namespace tolrob {

using Seed = std::uint64_t;

/// All randomness flows through an explicitly passed Rng; there is no global state.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Maps 0 to a nonzero value.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent substream seed from a master seed and a label.
///
/// seed = splitmix64(splitmix64(master) ^ fnv1a64(label)). The same
/// (master, label) pair always yields the same seed; distinct labels are
/// decorrelated by the avalanche of the finalizer.
Seed seed_derive(Seed master, std::string_view label);

/// Substream for the index-th trial under a label.
Seed seed_derive(Seed master, std::string_view label, std::uint64_t index);

inline Rng make_rng(Seed seed) { return Rng(seed); }

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double standard_normal(Rng& rng);

/// Uniform point on the sphere of the given radius centered at the origin
/// (normalized Gaussian vector).
Vector uniform_on_sphere(std::size_t d, double radius, Rng& rng);

/// Uniform point in the closed ball.
Vector uniform_in_ball(const Ball& ball, Rng& rng);

}  // namespace tolrob
