#include "tolrob/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tolrob {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Loss of h against a single closed ball (radius 0 is a point).
int ball_loss(const Hypothesis& h, const Ball& ball, Label y) {
  if (ball.radius == 0.0) return predict(h, ball.center) != y ? 1 : 0;
  return std::visit(
      Overloaded{
          [&](const Linear& lin) {
            const double s = dot(lin.w, ball.center) + lin.b;
            const double reach = lin.w.norm() * ball.radius;
            // Closed ball: extrema attained; the boundary itself is labeled +1.
            if (y == Label::kPositive) return s - reach < 0.0 ? 1 : 0;
            return s + reach >= 0.0 ? 1 : 0;
          },
          [&](const SphereBoundary& sb) {
            const double t = distance(ball.center, sb.center);
            const bool has_inside = std::max(0.0, t - ball.radius) <= sb.radius;
            const bool has_outside = t + ball.radius > sb.radius;
            if (sb.inside_label == y) return has_outside ? 1 : 0;
            return has_inside ? 1 : 0;
          },
          [&](const Table& tab) {
            // Keys are finitely many points; a ball of positive radius always
            // contains points carrying the default label.
            if (tab.default_label != y) return 1;
            for (const auto& p : tab.points) {
              if (distance(p, ball.center) <= ball.radius && predict(h, p) != y) return 1;
            }
            return 0;
          },
      },
      h.variant());
}

}  // namespace

Label label_from_int(int y) {
  if (y == 1) return Label::kPositive;
  if (y == -1) return Label::kNegative;
  throw std::invalid_argument("label must be +1 or -1");
}

Hypothesis Hypothesis::linear(Vector w, double b) {
  if (!(w.norm() > 0.0)) throw std::invalid_argument("Linear hypothesis needs ||w|| > 0");
  if (!std::isfinite(b)) throw std::invalid_argument("Linear offset must be finite");
  return Hypothesis(Linear{std::move(w), b});
}

Hypothesis Hypothesis::sphere(Vector center, double radius, Label inside) {
  if (!(radius > 0.0)) throw std::invalid_argument("SphereBoundary radius must be > 0");
  return Hypothesis(SphereBoundary{std::move(center), radius, inside});
}

Hypothesis Hypothesis::table(std::span<const std::pair<Vector, Label>> entries, Label default_label,
                             std::size_t dim) {
  Table t;
  t.default_label = default_label;
  t.dim = dim;
  for (const auto& [x, y] : entries) {
    if (x.dim() != dim) throw DimensionMismatch(x.dim(), dim);
    auto [it, inserted] = t.entries.insert_or_assign(RegionFamily::key_of(x), y);
    if (inserted) t.points.push_back(x);
  }
  return Hypothesis(std::move(t));
}

Hypothesis Hypothesis::constant(Label y, std::size_t dim) { return table({}, y, dim); }

std::size_t Hypothesis::dim() const {
  return std::visit(Overloaded{
                        [](const Linear& l) { return l.w.dim(); },
                        [](const SphereBoundary& s) { return s.center.dim(); },
                        [](const Table& t) { return t.dim; },
                    },
                    v_);
}

Label predict(const Hypothesis& h, const Vector& x) {
  if (x.dim() != h.dim()) throw DimensionMismatch(x.dim(), h.dim());
  return std::visit(Overloaded{
                        [&](const Linear& l) { return dot(l.w, x) + l.b >= 0.0 ? Label::kPositive : Label::kNegative; },
                        [&](const SphereBoundary& s) {
                          return distance(x, s.center) <= s.radius ? s.inside_label : flip(s.inside_label);
                        },
                        [&](const Table& t) {
                          auto it = t.entries.find(RegionFamily::key_of(x));
                          return it == t.entries.end() ? t.default_label : it->second;
                        },
                    },
                    h.variant());
}

bool BoundedLinearClass::contains(const Hypothesis& h) const {
  const auto* l = std::get_if<Linear>(&h.variant());
  return l != nullptr && l->w.dim() == d && std::abs(l->b) / l->w.norm() <= W * (1.0 + 1e-12);
}

FiniteClass::FiniteClass(std::vector<Hypothesis> hs) : hs_(std::move(hs)) {
  if (hs_.empty()) throw std::invalid_argument("FiniteClass must be nonempty");
}

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("distribution needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.probability > 0.0)) throw std::invalid_argument("atom probabilities must be positive");
    total += a.probability;
    cdf_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("atom probabilities must sum to 1");
}

DiscreteDistribution DiscreteDistribution::uniform(std::vector<LabeledExample> support) {
  std::vector<Atom> atoms;
  const double p = 1.0 / static_cast<double>(support.size());
  for (auto& ex : support) atoms.push_back({std::move(ex), p});
  return DiscreteDistribution(std::move(atoms));
}

std::vector<LabeledExample> DiscreteDistribution::sample(std::size_t n, Rng& rng) const {
  std::vector<LabeledExample> out;
  out.reserve(n);
  const double total = cdf_.back();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), atoms_.size() - 1);
    out.push_back(atoms_[idx].example);
  }
  return out;
}

int robust_loss_point(const Hypothesis& h, const Region& r, const LabeledExample& ex) {
  if (r.dim() != h.dim()) throw DimensionMismatch(r.dim(), h.dim());
  if (ex.x.dim() != h.dim()) throw DimensionMismatch(ex.x.dim(), h.dim());
  const Region n = r.normalized();
  if (const auto* f = std::get_if<FinitePoints>(&n.variant())) {
    for (const auto& p : f->points) {
      if (predict(h, p) != ex.y) return 1;
    }
    return 0;
  }
  for (const auto& b : as_balls(n)) {
    if (ball_loss(h, b, ex.y) == 1) return 1;
  }
  return 0;
}

int robust_loss_point_sampled(const Hypothesis& h, const Region& r, const LabeledExample& ex, std::size_t n,
                              Rng& rng) {
  const Region norm = r.normalized();
  if (std::holds_alternative<FinitePoints>(norm.variant())) return robust_loss_point(h, norm, ex);
  RegionSampler sampler(norm);
  for (std::size_t i = 0; i < n; ++i) {
    if (predict(h, sampler.sample(rng)) != ex.y) return 1;
  }
  return 0;
}

double robust_loss_sample(const Hypothesis& h, const RegionFamily& family, std::span<const LabeledExample> s) {
  if (s.empty()) return 0.0;
  std::size_t losses = 0;
  for (const auto& ex : s) losses += static_cast<std::size_t>(robust_loss_point(h, family.region_for(ex.x), ex));
  return static_cast<double>(losses) / static_cast<double>(s.size());
}

double robust_loss_distribution(const Hypothesis& h, const RegionFamily& family, const DiscreteDistribution& dist) {
  double total = 0.0;
  for (const auto& atom : dist.atoms()) {
    if (robust_loss_point(h, family.region_for(atom.example.x), atom.example) == 1) total += atom.probability;
  }
  return total;
}

std::optional<Ball> constant_ball_through(const Hypothesis& h, double alpha, const Vector& x) {
  const Label here = predict(h, x);
  const LabeledExample probe{x, here};
  auto verified = [&](const Vector& center) -> std::optional<Ball> {
    Ball b(center, alpha);
    if (distance(center, x) <= alpha * (1.0 + 1e-12) && ball_loss(h, b, here) == 0) return b;
    return std::nullopt;
  };

  return std::visit(
      Overloaded{
          [&](const Linear& l) -> std::optional<Ball> {
            // Slide the ball away from the boundary on x's side.
            const Vector unit = l.w * (1.0 / l.w.norm());
            return verified(here == Label::kPositive ? x + alpha * unit : x - alpha * unit);
          },
          [&](const SphereBoundary& s) -> std::optional<Ball> {
            const Vector off = x - s.center;
            const double t = off.norm();
            const Vector u = t > 0.0 ? off * (1.0 / t) : Vector::unit(x.dim(), 0);
            if (t <= s.radius) {
              if (alpha > s.radius) return std::nullopt;
              return verified(s.center + std::max(0.0, t - alpha) * u);
            }
            return verified(x + alpha * u);
          },
          [&](const Table& tab) -> std::optional<Ball> {
            if (here != tab.default_label) return std::nullopt;
            if (auto b = verified(x)) return b;
            std::vector<Vector> dirs;
            for (std::size_t i = 0; i < x.dim(); ++i) {
              dirs.push_back(Vector::unit(x.dim(), i));
              dirs.push_back(Vector::unit(x.dim(), i) * -1.0);
            }
            Rng rng = make_rng(0x7ab1e);
            for (int i = 0; i < 64; ++i) dirs.push_back(uniform_on_sphere(x.dim(), 1.0, rng));
            for (const auto& u : dirs) {
              if (auto b = verified(x + alpha * u)) return b;
            }
            return std::nullopt;
          },
      },
      h.variant());
}

RegularityCertificate regularity_check_at(const Hypothesis& h, double alpha, std::span<const Vector> probes) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  RegularityCertificate cert;
  cert.alpha = alpha;
  cert.probes = probes.size();
  for (const auto& x : probes) {
    if (!constant_ball_through(h, alpha, x)) cert.failures.push_back(x);
  }
  return cert;
}

RegularityCertificate regularity_check(const Hypothesis& h, double alpha, std::size_t probes, const Ball& domain,
                                       Seed seed) {
  Rng rng = make_rng(seed_derive(seed, "regularity"));
  std::vector<Vector> pts;
  pts.reserve(probes);
  for (std::size_t i = 0; i < probes; ++i) pts.push_back(uniform_in_ball(domain, rng));
  // Table keys are the only candidate failure points of a table.
  if (const auto* t = std::get_if<Table>(&h.variant())) {
    for (const auto& p : t->points) pts.push_back(p);
  }
  RegularityCertificate cert = regularity_check_at(h, alpha, pts);
  cert.domain = domain;
  return cert;
}

}  // namespace tolrob
