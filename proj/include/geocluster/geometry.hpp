#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace geocluster {

/// Relative tolerance used by every geometric predicate that compares
/// distances: a <= b is accepted when a <= b + kTolerance * (1 + |b|).
inline constexpr double kTolerance = 1e-9;

inline double tolerance_for(double scale) { return kTolerance * (1.0 + (scale < 0 ? -scale : scale)); }

/// a <= b up to the shared relative tolerance.
inline bool leq_tol(double a, double b) { return a <= b + tolerance_for(b); }

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point in R^d. Coordinates are finite; the dimension is fixed at construction.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& data() const { return coords_; }

  Point scaled(double factor) const;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(const Point& p) const;
};

double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

/// Distance from p to the nearest point of `set` (+inf when the set is empty).
double distance_to_set(const Point& p, std::span<const Point> set);

/// Throws DimensionMismatch unless every point has dimension `dim` (and dim >= 1).
void require_dimension(std::span<const Point> points, std::size_t dim);

/// Symmetric, nonnegative, zero-diagonal distance matrix satisfying the
/// triangle inequality up to 1e-9 (checked on construction).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::vector<double>> rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Either Euclidean distance over a fixed point list or an explicit matrix.
/// Elements of the ground set are addressed by index.
class Metric {
 public:
  Metric() = default;
  static Metric euclidean(std::vector<Point> points);
  static Metric explicit_matrix(DistanceMatrix matrix);

  bool is_euclidean() const { return std::holds_alternative<std::vector<Point>>(ground_); }
  std::size_t size() const;
  double distance(std::size_t i, std::size_t j) const;

  /// Ground-set points; throws std::logic_error for a matrix metric.
  const std::vector<Point>& points() const;
  const DistanceMatrix& matrix() const;

 private:
  std::variant<std::vector<Point>, DistanceMatrix> ground_;
};

/// Exact minimum enclosing ball for d <= 16; (1 + 1e-6)-approximate above.
/// Every input point lies within radius (the radius is recomputed from the centre).
Ball meb(std::span<const Point> points);

/// max_{z' in T} |z - z'| >= sqrt(r_B(T)^2 + K^2) - tol with K = |z - c_B(T)|.
bool meb_distance_lower_bound_check(std::span<const Point> set, const Point& z);

}  // namespace geocluster
