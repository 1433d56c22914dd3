#include "tolrob/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tolrob {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t dim_of(const std::vector<Vector>& pts) { return pts.front().dim(); }

}  // namespace

Region Region::points(std::vector<Vector> pts) {
  if (pts.empty()) throw std::invalid_argument("FinitePoints region must be nonempty");
  for (const auto& p : pts) require_same_dim(p, pts.front());
  return Region(FinitePoints{std::move(pts)});
}

Region Region::ball(Vector center, double radius) { return Region(Ball(std::move(center), radius)); }

Region Region::balls(std::vector<Ball> bs) {
  if (bs.empty()) throw std::invalid_argument("UnionOfBalls region must be nonempty");
  for (const auto& b : bs) require_same_dim(b.center, bs.front().center);
  return Region(UnionOfBalls{std::move(bs)});
}

Region Region::expanded(const Region& base, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("expansion gamma must be > 0");
  if (const auto* e = std::get_if<Expanded>(&base.v_)) {
    return Region(Expanded{e->base, e->gamma + gamma});
  }
  return Region(Expanded{std::make_shared<const Region>(base), gamma});
}

std::size_t Region::dim() const {
  return std::visit(Overloaded{
                        [](const FinitePoints& f) { return dim_of(f.points); },
                        [](const Ball& b) { return b.dim(); },
                        [](const UnionOfBalls& u) { return u.balls.front().dim(); },
                        [](const Expanded& e) { return e.base->dim(); },
                    },
                    v_);
}

Region Region::normalized() const {
  if (const auto* e = std::get_if<Expanded>(&v_)) return expand(*e->base, e->gamma);
  return *this;
}

bool operator==(const Expanded& a, const Expanded& b) { return a.gamma == b.gamma && *a.base == *b.base; }

bool operator==(const Region& a, const Region& b) { return a.v_ == b.v_; }

double point_to_region_distance(const Vector& p, const Region& r) {
  return std::visit(Overloaded{
                        [&](const FinitePoints& f) {
                          double best = std::numeric_limits<double>::infinity();
                          for (const auto& q : f.points) best = std::min(best, distance(p, q));
                          return best;
                        },
                        [&](const Ball& b) { return std::max(0.0, distance(p, b.center) - b.radius); },
                        [&](const UnionOfBalls& u) {
                          double best = std::numeric_limits<double>::infinity();
                          for (const auto& b : u.balls) {
                            best = std::min(best, std::max(0.0, distance(p, b.center) - b.radius));
                          }
                          return best;
                        },
                        // Distance to a Minkowski sum with a ball of radius g.
                        [&](const Expanded& e) {
                          return std::max(0.0, point_to_region_distance(p, *e.base) - e.gamma);
                        },
                    },
                    r.variant());
}

Region expand(const Region& r, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("expansion gamma must be > 0");
  return std::visit(Overloaded{
                        [&](const FinitePoints& f) {
                          if (f.points.size() == 1) return Region::ball(f.points.front(), gamma);
                          std::vector<Ball> bs;
                          bs.reserve(f.points.size());
                          for (const auto& p : f.points) bs.emplace_back(p, gamma);
                          return Region::balls(std::move(bs));
                        },
                        [&](const Ball& b) { return Region::ball(b.center, b.radius + gamma); },
                        [&](const UnionOfBalls& u) {
                          std::vector<Ball> bs;
                          bs.reserve(u.balls.size());
                          for (const auto& b : u.balls) bs.emplace_back(b.center, b.radius + gamma);
                          return Region::balls(std::move(bs));
                        },
                        [&](const Expanded& e) { return expand(*e.base, e.gamma + gamma); },
                    },
                    r.variant());
}

bool contains(const Region& r, const Vector& p) {
  if (p.dim() != r.dim()) throw DimensionMismatch(p.dim(), r.dim());
  return point_to_region_distance(p, r) <= kGeomTol;
}

double diameter(const Region& r) {
  return std::visit(Overloaded{
                        [](const FinitePoints& f) {
                          double best = 0.0;
                          for (std::size_t i = 0; i < f.points.size(); ++i) {
                            for (std::size_t j = i + 1; j < f.points.size(); ++j) {
                              best = std::max(best, distance(f.points[i], f.points[j]));
                            }
                          }
                          return best;
                        },
                        [](const Ball& b) { return 2.0 * b.radius; },
                        [](const UnionOfBalls& u) {
                          double best = 0.0;
                          for (std::size_t i = 0; i < u.balls.size(); ++i) {
                            for (std::size_t j = i; j < u.balls.size(); ++j) {
                              const auto& a = u.balls[i];
                              const auto& b = u.balls[j];
                              best = std::max(best, distance(a.center, b.center) + a.radius + b.radius);
                            }
                          }
                          return best;
                        },
                        [](const Expanded& e) { return diameter(*e.base) + 2.0 * e.gamma; },
                    },
                    r.variant());
}

std::vector<Ball> as_balls(const Region& r) {
  const Region n = r.normalized();
  return std::visit(Overloaded{
                        [](const FinitePoints& f) {
                          std::vector<Ball> bs;
                          for (const auto& p : f.points) bs.emplace_back(p, 0.0);
                          return bs;
                        },
                        [](const Ball& b) { return std::vector<Ball>{b}; },
                        [](const UnionOfBalls& u) { return u.balls; },
                        [](const Expanded&) -> std::vector<Ball> { throw std::logic_error("unnormalized region"); },
                    },
                    n.variant());
}

double BoundingBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

BoundingBox bounding_box(const Region& r) {
  const std::size_t d = r.dim();
  BoundingBox box{std::vector<double>(d, std::numeric_limits<double>::infinity()),
                  std::vector<double>(d, -std::numeric_limits<double>::infinity())};
  for (const auto& b : as_balls(r)) {
    for (std::size_t i = 0; i < d; ++i) {
      box.lo[i] = std::min(box.lo[i], b.center[i] - b.radius);
      box.hi[i] = std::max(box.hi[i], b.center[i] + b.radius);
    }
  }
  return box;
}

RegionSampler::RegionSampler(const Region& r) : region_(r.normalized()), box_(bounding_box(region_)) {
  if (std::holds_alternative<FinitePoints>(region_.variant())) {
    throw ZeroMeasureRegion("cannot sample uniformly from a finite point set");
  }
  bool positive = false;
  for (const auto& b : as_balls(region_)) positive = positive || b.radius > 0.0;
  if (!positive) throw ZeroMeasureRegion("region has zero Lebesgue measure");
}

Vector RegionSampler::sample(Rng& rng) {
  const std::size_t d = box_.lo.size();
  std::vector<double> c(d);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) c[i] = uniform(rng, box_.lo[i], box_.hi[i]);
    ++attempts_;
    Vector p(c);
    if (point_to_region_distance(p, region_) <= 0.0) {
      ++accepted_;
      return p;
    }
    if (attempts_ >= 1'000'000 && acceptance_rate() < 1e-6) {
      throw std::runtime_error("rejection sampler efficiency below 1e-6 after " + std::to_string(attempts_) +
                               " attempts (" + std::to_string(accepted_) + " accepted)");
    }
  }
}

double RegionSampler::acceptance_rate() const {
  return attempts_ == 0 ? 1.0 : static_cast<double>(accepted_) / static_cast<double>(attempts_);
}

std::vector<Vector> uniform_sample(const Region& r, std::size_t n, Seed seed) {
  RegionSampler sampler(r);
  Rng rng = make_rng(seed);
  std::vector<Vector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.sample(rng));
  return out;
}

RegionFamily::Key RegionFamily::key_of(const Vector& x) {
  Key k;
  k.reserve(x.dim());
  for (double c : x.coords()) k.push_back(std::llround(c * 1e12));
  return k;
}

RegionFamily RegionFamily::with_default_ball(double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("default radius must be >= 0");
  RegionFamily f;
  f.default_radius_ = radius;
  return f;
}

void RegionFamily::assign(const Vector& anchor, Region r, bool allow_outside) {
  if (anchor.dim() != r.dim()) throw DimensionMismatch(anchor.dim(), r.dim());
  const Key k = key_of(anchor);
  if (!contains(r, anchor)) {
    if (!allow_outside) throw std::invalid_argument("region does not contain its anchor");
    flagged_.push_back(k);
  }
  regions_.insert_or_assign(k, std::move(r));
}

const Region* RegionFamily::find(const Vector& x) const {
  auto it = regions_.find(key_of(x));
  return it == regions_.end() ? nullptr : &it->second;
}

bool RegionFamily::covers(const Vector& x) const { return default_radius_.has_value() || find(x) != nullptr; }

Region RegionFamily::region_for(const Vector& x) const {
  if (const Region* r = find(x)) return *r;
  if (default_radius_) {
    if (*default_radius_ == 0.0) return Region::points({x});
    return Region::ball(x, *default_radius_);
  }
  throw MissingRegion("no region assigned to anchor");
}

RegionFamily RegionFamily::expanded(double r) const {
  if (r < 0.0) throw std::invalid_argument("expansion radius must be >= 0");
  if (r == 0.0) return *this;
  RegionFamily out;
  out.flagged_ = flagged_;
  if (default_radius_) out.default_radius_ = *default_radius_ + r;
  for (const auto& [k, region] : regions_) out.regions_.emplace(k, expand(region, r));
  return out;
}

}  // namespace tolrob
