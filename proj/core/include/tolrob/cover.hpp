#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tolrob/model.hpp"
#include "tolrob/random.hpp"
#include "tolrob/region.hpp"

namespace tolrob {

enum class SandwichKind {
  kFinitePoints,   // middle = grid centers intersected with U^r
  kUnionOfBalls,   // middle = radius alpha/2 balls meeting U^{r-alpha}
};

/// lower = U^{r-alpha}, middle = V^r, upper = U^r.
struct SandwichTriple {
  SandwichKind kind = SandwichKind::kFinitePoints;
  Region lower;
  Region middle;
  Region upper;
  double alpha = 0.0;
  double r = 0.0;
  double base_diameter = 0.0;

  std::size_t middle_count() const;
  /// C * (diam(base)/alpha + 2r/alpha + 1)^d with the grid constant C.
  double count_bound() const;
};

/// Constant of the middle-count bound: (2 (sqrt(d) + 2))^d.
double sandwich_count_constant(std::size_t d);

SandwichTriple build_v_lemma5(const Region& base, double r, double alpha, Seed seed);
SandwichTriple build_v_lemmaD1(const Region& base, double r, double alpha, Seed seed);

struct SandwichViolation {
  std::size_t hypothesis = 0;
  std::size_t example = 0;
  int lower = 0;
  int middle = 0;
  int upper = 0;
  bool left = false;   // lower > middle
  bool right = false;  // middle > upper
  bool certified = false;
};

struct SandwichReport {
  std::vector<bool> regular;  // per hypothesis alpha-regularity certificate
  std::vector<SandwichViolation> violations;
  std::size_t checked = 0;

  /// No violation involving a certified hypothesis (D.1 triples certify all).
  bool clean() const;
};

struct SandwichAuditOptions {
  std::size_t regularity_probes = 2000;
  Seed seed = 0;
};

SandwichReport sandwich_audit(const SandwichTriple& triple, std::span<const Hypothesis> hypotheses,
                              std::span<const LabeledExample> examples, const SandwichAuditOptions& opts = {});

struct InclusionAudit {
  std::size_t probes = 0;
  std::size_t lower_not_in_middle = 0;
  std::size_t middle_not_in_upper = 0;
  bool passed() const { return lower_not_in_middle == 0 && middle_not_in_upper == 0; }
};

/// Checks lower within middle within upper on uniform probes of each set and
/// of the upper bounding box.
InclusionAudit set_inclusion_audit(const SandwichTriple& triple, std::size_t probes, Seed seed);

/// A finite-middle triple around B(0, 1) in the plane (r = 1, alpha = 0.5) and
/// a Table hypothesis that flips one point of U^{r-alpha} lying off the middle
/// set. The hypothesis is not alpha-regular and breaks lower <= middle.
struct NegativeControl {
  SandwichTriple triple;
  Hypothesis hypothesis;
  LabeledExample example;
  SandwichReport report;
};

NegativeControl sandwich_negative_control(Seed seed);

}  // namespace tolrob
