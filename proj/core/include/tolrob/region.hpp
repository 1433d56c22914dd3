#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "tolrob/random.hpp"
#include "tolrob/vector.hpp"

namespace tolrob {

class Region;

struct FinitePoints {
  std::vector<Vector> points;
  friend bool operator==(const FinitePoints&, const FinitePoints&) = default;
};

struct UnionOfBalls {
  std::vector<Ball> balls;
  friend bool operator==(const UnionOfBalls&, const UnionOfBalls&) = default;
};

/// Lazy gamma-expansion {p : dist(p, base) <= gamma}. Never nested: the
/// factory folds Expanded(Expanded(b, g1), g2) into Expanded(b, g1 + g2).
struct Expanded {
  std::shared_ptr<const Region> base;
  double gamma = 0.0;
  friend bool operator==(const Expanded& a, const Expanded& b);
};

/// A perturbation set U_x. Closed, bounded, nonempty.
class Region {
 public:
  using Variant = std::variant<FinitePoints, Ball, UnionOfBalls, Expanded>;

  static Region points(std::vector<Vector> pts);
  static Region ball(Vector center, double radius);
  static Region balls(std::vector<Ball> bs);
  static Region expanded(const Region& base, double gamma);

  const Variant& variant() const { return v_; }
  std::size_t dim() const;

  /// Concrete representation: resolves Expanded into Ball / UnionOfBalls.
  Region normalized() const;

  bool is_expanded() const { return std::holds_alternative<Expanded>(v_); }

  friend bool operator==(const Region& a, const Region& b);

 private:
  explicit Region(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

class ZeroMeasureRegion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BoundingBox {
  std::vector<double> lo;
  std::vector<double> hi;
  double volume() const;
};

double point_to_region_distance(const Vector& p, const Region& r);

/// The gamma-expansion in normalized form: Ball(c, rho) -> Ball(c, rho + gamma),
/// a single point -> Ball, several points -> UnionOfBalls of radius gamma,
/// UnionOfBalls -> every radius inflated.
Region expand(const Region& r, double gamma);

bool contains(const Region& r, const Vector& p);

/// Exact for FinitePoints and single balls; for unions the pairwise bound
/// max_{i,j} |c_i - c_j| + rho_i + rho_j, which is attained on the center line.
double diameter(const Region& r);

BoundingBox bounding_box(const Region& r);

/// Balls making up a normalized region (points become radius-0 balls).
std::vector<Ball> as_balls(const Region& r);

/// Rejection sampler over the bounding box; exact Lebesgue uniformity on
/// overlapping unions without inclusion-exclusion.
class RegionSampler {
 public:
  explicit RegionSampler(const Region& r);
  Vector sample(Rng& rng);
  double acceptance_rate() const;

 private:
  Region region_;
  BoundingBox box_;
  std::uint64_t attempts_ = 0;
  std::uint64_t accepted_ = 0;
};

std::vector<Vector> uniform_sample(const Region& r, std::size_t n, Seed seed);

class MissingRegion : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Anchor-indexed perturbation regions. Keys are the anchor coordinates
/// quantized at 1e-12.
class RegionFamily {
 public:
  using Key = std::vector<std::int64_t>;
  static Key key_of(const Vector& x);

  RegionFamily() = default;

  /// Off-support anchors get B(x, radius); radius 0 means the singleton {x}.
  static RegionFamily with_default_ball(double radius);

  /// Throws if r does not contain the anchor unless allow_outside is set, in
  /// which case the anchor is recorded as flagged.
  void assign(const Vector& anchor, Region r, bool allow_outside = false);

  bool covers(const Vector& x) const;
  Region region_for(const Vector& x) const;
  const Region* find(const Vector& x) const;

  /// Every region replaced by expand(region, r); r == 0 returns a copy.
  RegionFamily expanded(double r) const;

  std::size_t size() const { return regions_.size(); }
  const std::vector<Key>& flagged() const { return flagged_; }
  std::optional<double> default_radius() const { return default_radius_; }

 private:
  std::map<Key, Region> regions_;
  std::vector<Key> flagged_;
  std::optional<double> default_radius_;
};

}  // namespace tolrob
