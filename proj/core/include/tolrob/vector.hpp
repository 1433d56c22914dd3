#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace tolrob {

/// Raised when two geometric objects live in different dimensions.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t a, std::size_t b);
};

/// Point in R^d. Coordinates are unitless; d >= 1 and every coordinate finite.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> coords);
  Vector(std::initializer_list<double> coords);

  static Vector zeros(std::size_t d);
  static Vector unit(std::size_t d, std::size_t axis);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  double norm() const;
  double squared_norm() const;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> coords_;
};

double dot(const Vector& a, const Vector& b);
double distance(const Vector& a, const Vector& b);
double squared_distance(const Vector& a, const Vector& b);
void require_same_dim(const Vector& a, const Vector& b);

/// Closed Euclidean ball; radius 0 is a single point.
struct Ball {
  Vector center;
  double radius = 0.0;

  Ball() = default;
  Ball(Vector c, double r);

  std::size_t dim() const { return center.dim(); }
  bool contains(const Vector& p) const;
  friend bool operator==(const Ball&, const Ball&) = default;
};

/// Absolute slack used by closed-set membership tests.
inline constexpr double kGeomTol = 1e-12;

}  // namespace tolrob
