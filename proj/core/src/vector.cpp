#include "tolrob/vector.hpp"

#include <string>

namespace tolrob {

DimensionMismatch::DimensionMismatch(std::size_t a, std::size_t b)
    : std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b)) {}

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("Vector needs d >= 1");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("Vector coordinate is not finite");
  }
}

Vector::Vector(std::initializer_list<double> coords)
    : Vector(std::vector<double>(coords)) {}

Vector Vector::zeros(std::size_t d) { return Vector(std::vector<double>(d, 0.0)); }

Vector Vector::unit(std::size_t d, std::size_t axis) {
  std::vector<double> c(d, 0.0);
  c.at(axis) = 1.0;
  return Vector(std::move(c));
}

double Vector::squared_norm() const {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return s;
}

double Vector::norm() const { return std::sqrt(squared_norm()); }

Vector& Vector::operator+=(const Vector& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

void require_same_dim(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance(const Vector& a, const Vector& b) { return std::sqrt(squared_distance(a, b)); }

Ball::Ball(Vector c, double r) : center(std::move(c)), radius(r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("Ball radius must be finite and >= 0");
}

bool Ball::contains(const Vector& p) const { return distance(center, p) <= radius + kGeomTol; }

}  // namespace tolrob
