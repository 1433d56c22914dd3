#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "tolrob/random.hpp"
#include "tolrob/region.hpp"
#include "tolrob/vector.hpp"

namespace tolrob {

enum class Label : int { kNegative = -1, kPositive = 1 };

inline Label flip(Label y) { return y == Label::kPositive ? Label::kNegative : Label::kPositive; }
inline int to_int(Label y) { return static_cast<int>(y); }
Label label_from_int(int y);

/// Halfspace classifier: +1 iff <w, x> + b >= 0.
struct Linear {
  Vector w;
  double b = 0.0;
};

/// +inside_label on the closed ball, the other label outside.
struct SphereBoundary {
  Vector center;
  double radius = 0.0;
  Label inside_label = Label::kPositive;
};

/// Lookup table on quantized points with a default label elsewhere.
struct Table {
  std::map<RegionFamily::Key, Label> entries;
  std::vector<Vector> points;  // the keyed points, for geometric queries
  Label default_label = Label::kNegative;
  std::size_t dim = 0;
};

class Hypothesis {
 public:
  using Variant = std::variant<Linear, SphereBoundary, Table>;

  static Hypothesis linear(Vector w, double b);
  static Hypothesis sphere(Vector center, double radius, Label inside);
  static Hypothesis table(std::span<const std::pair<Vector, Label>> entries, Label default_label, std::size_t dim);
  static Hypothesis constant(Label y, std::size_t dim);

  const Variant& variant() const { return v_; }
  std::size_t dim() const;

 private:
  explicit Hypothesis(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

Label predict(const Hypothesis& h, const Vector& x);

/// W-bounded halfspaces: |b| / ||w|| <= W.
struct BoundedLinearClass {
  double W = 1.0;
  std::size_t d = 2;
  bool contains(const Hypothesis& h) const;
};

class FiniteClass {
 public:
  explicit FiniteClass(std::vector<Hypothesis> hs);
  std::size_t size() const { return hs_.size(); }
  const Hypothesis& operator[](std::size_t i) const { return hs_[i]; }
  const std::vector<Hypothesis>& hypotheses() const { return hs_; }

 private:
  std::vector<Hypothesis> hs_;
};

struct LabeledExample {
  Vector x;
  Label y = Label::kPositive;
};

class DiscreteDistribution {
 public:
  struct Atom {
    LabeledExample example;
    double probability = 0.0;
  };

  explicit DiscreteDistribution(std::vector<Atom> atoms);
  static DiscreteDistribution uniform(std::vector<LabeledExample> support);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::vector<LabeledExample> sample(std::size_t n, Rng& rng) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cdf_;
};

class UnsupportedPair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 1 iff some x' in r has predict(h, x') != ex.y. Exact for every supported
/// pair: Linear/Sphere against balls via closed-form extrema, any hypothesis
/// against finite point sets by enumeration, Table against balls via its keys.
int robust_loss_point(const Hypothesis& h, const Region& r, const LabeledExample& ex);

/// Fallback for pairs without a closed form: searches n uniform samples.
/// One-sided: may miss a witness, never invents one.
int robust_loss_point_sampled(const Hypothesis& h, const Region& r, const LabeledExample& ex, std::size_t n,
                              Rng& rng);

double robust_loss_sample(const Hypothesis& h, const RegionFamily& family, std::span<const LabeledExample> s);

double robust_loss_distribution(const Hypothesis& h, const RegionFamily& family, const DiscreteDistribution& dist);

struct RegularityCertificate {
  double alpha = 0.0;
  std::size_t probes = 0;
  Ball domain;
  std::vector<Vector> failures;
  bool passed() const { return failures.empty(); }
};

/// A radius-alpha ball containing x on which h is constant, if one is found.
std::optional<Ball> constant_ball_through(const Hypothesis& h, double alpha, const Vector& x);

/// Probes uniform points of `domain` (plus every table key) and records the
/// points where no constant radius-alpha ball through them was found.
RegularityCertificate regularity_check(const Hypothesis& h, double alpha, std::size_t probes, const Ball& domain,
                                       Seed seed);
RegularityCertificate regularity_check_at(const Hypothesis& h, double alpha, std::span<const Vector> probes);

}  // namespace tolrob
