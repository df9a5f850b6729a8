#include "geocluster/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <sstream>
#include <string>

namespace geocluster {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("point coordinate is not finite");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

Point Point::scaled(double factor) const {
  std::vector<double> out(coords_);
  for (double& c : out) c *= factor;
  return Point(std::move(out));
}

double squared_distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

double distance_to_set(const Point& p, std::span<const Point> set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : set) best = std::min(best, squared_distance(p, q));
  return std::sqrt(best);
}

bool Ball::contains(const Point& p) const { return leq_tol(distance(center, p), radius); }

void require_dimension(std::span<const Point> points, std::size_t dim) {
  if (dim == 0) throw DimensionMismatch("dimension must be at least 1");
  for (const Point& p : points) {
    if (p.dim() != dim) {
      throw DimensionMismatch("point of dimension " + std::to_string(p.dim()) +
                              " in a set of dimension " + std::to_string(dim));
    }
  }
}

// ---------------------------------------------------------------------------
// Distance matrix and metric

DistanceMatrix::DistanceMatrix(std::vector<std::vector<double>> rows) : n_(rows.size()) {
  values_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw std::invalid_argument("distance matrix row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n_));
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0) {
        throw std::invalid_argument("distance matrix entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative or not finite");
      }
      values_[i * n_ + j] = v;
    }
  }
  auto at = [this](std::size_t i, std::size_t j) { return values_[i * n_ + j]; };
  for (std::size_t i = 0; i < n_; ++i) {
    if (at(i, i) > kTolerance) {
      throw std::invalid_argument("distance matrix diagonal entry " + std::to_string(i) +
                                  " is not zero");
    }
    values_[i * n_ + i] = 0.0;
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > tolerance_for(at(i, j))) {
        throw std::invalid_argument("distance matrix is not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t m = 0; m < n_; ++m) {
        if (at(i, j) > at(i, m) + at(m, j) + kTolerance) {
          std::ostringstream msg;
          msg << "distance matrix violates the triangle inequality: d(" << i << "," << j
              << ") > d(" << i << "," << m << ") + d(" << m << "," << j << ")";
          throw std::invalid_argument(msg.str());
        }
      }
    }
  }
}

Metric Metric::euclidean(std::vector<Point> points) {
  if (!points.empty()) require_dimension(points, points.front().dim());
  Metric m;
  m.ground_ = std::move(points);
  return m;
}

Metric Metric::explicit_matrix(DistanceMatrix matrix) {
  Metric m;
  m.ground_ = std::move(matrix);
  return m;
}

std::size_t Metric::size() const {
  if (const auto* pts = std::get_if<std::vector<Point>>(&ground_)) return pts->size();
  return std::get<DistanceMatrix>(ground_).size();
}

double Metric::distance(std::size_t i, std::size_t j) const {
  const std::size_t n = size();
  if (i >= n || j >= n) {
    throw std::out_of_range("metric index out of range: (" + std::to_string(i) + "," +
                            std::to_string(j) + ") with ground set of size " + std::to_string(n));
  }
  if (const auto* pts = std::get_if<std::vector<Point>>(&ground_)) {
    return geocluster::distance((*pts)[i], (*pts)[j]);
  }
  return std::get<DistanceMatrix>(ground_)(i, j);
}

const std::vector<Point>& Metric::points() const {
  if (const auto* pts = std::get_if<std::vector<Point>>(&ground_)) return *pts;
  throw std::logic_error("metric has no coordinates (explicit matrix)");
}

const DistanceMatrix& Metric::matrix() const {
  if (const auto* m = std::get_if<DistanceMatrix>(&ground_)) return *m;
  throw std::logic_error("metric is Euclidean, not an explicit matrix");
}

// ---------------------------------------------------------------------------
// Minimum enclosing ball.
//
// Move-to-front recursion with pivoting over an incrementally orthogonalised
// support set. Pushing a point that is (numerically) in the affine hull of the
// current support is rejected; the recursion then treats it as an ordinary
// point, which resolves degenerate supports.

namespace {

class SupportBasis {
 public:
  explicit SupportBasis(std::size_t d)
      : d_(d),
        q0_(d),
        z_(d + 1),
        f_(d + 1),
        v_(d + 1, std::vector<double>(d)),
        a_(d + 1, std::vector<double>(d + 1)),
        c_(d + 1, std::vector<double>(d)),
        sqr_r_(d + 1) {}

  std::size_t size() const { return m_; }
  const std::vector<double>& center() const { return c_[current_]; }
  double squared_radius() const { return current_sqr_r_; }

  double excess(std::span<const double> p) const {
    const auto& c = c_[current_];
    double e = -current_sqr_r_;
    for (std::size_t i = 0; i < d_; ++i) {
      const double diff = p[i] - c[i];
      e += diff * diff;
    }
    return e;
  }

  bool push(std::span<const double> p) {
    if (m_ == 0) {
      for (std::size_t i = 0; i < d_; ++i) q0_[i] = c_[0][i] = p[i];
      sqr_r_[0] = 0.0;
    } else {
      auto& vm = v_[m_];
      for (std::size_t i = 0; i < d_; ++i) vm[i] = p[i] - q0_[i];
      for (std::size_t i = 1; i < m_; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < d_; ++j) dot += v_[i][j] * vm[j];
        a_[m_][i] = dot * 2.0 / z_[i];
      }
      for (std::size_t i = 1; i < m_; ++i) {
        for (std::size_t j = 0; j < d_; ++j) vm[j] -= a_[m_][i] * v_[i][j];
      }
      double z = 0.0;
      for (std::size_t j = 0; j < d_; ++j) z += vm[j] * vm[j];
      z *= 2.0;
      if (z <= kDegenerate * current_sqr_r_ || z == 0.0) return false;
      z_[m_] = z;
      double e = -sqr_r_[m_ - 1];
      for (std::size_t i = 0; i < d_; ++i) {
        const double diff = p[i] - c_[m_ - 1][i];
        e += diff * diff;
      }
      f_[m_] = e / z;
      for (std::size_t i = 0; i < d_; ++i) c_[m_][i] = c_[m_ - 1][i] + f_[m_] * vm[i];
      sqr_r_[m_] = sqr_r_[m_ - 1] + e * f_[m_] / 2.0;
    }
    current_ = m_;
    current_sqr_r_ = sqr_r_[m_];
    ++m_;
    return true;
  }

  void pop() { --m_; }

 private:
  static constexpr double kDegenerate = 1e-32;

  std::size_t d_;
  std::size_t m_ = 0;
  std::size_t current_ = 0;
  double current_sqr_r_ = -1.0;
  std::vector<double> q0_, z_, f_;
  std::vector<std::vector<double>> v_, a_, c_;
  std::vector<double> sqr_r_;
};

class MoveToFrontMeb {
 public:
  MoveToFrontMeb(std::span<const Point> points, std::size_t d) : points_(points), d_(d), basis_(d) {
    for (std::size_t i = 0; i < points.size(); ++i) order_.push_back(i);
    pivot(order_.end());
  }

  std::vector<double> center() const { return basis_.center(); }

 private:
  using It = std::list<std::size_t>::iterator;

  std::span<const double> at(It it) const { return points_[*it].coords(); }

  void move_to_front(It j) {
    if (support_end_ == j) ++support_end_;
    order_.splice(order_.begin(), order_, j);
  }

  void mtf(It end) {
    support_end_ = order_.begin();
    if (basis_.size() == d_ + 1) return;
    for (It k = order_.begin(); k != end;) {
      It j = k++;
      if (basis_.excess(at(j)) > 0 && basis_.push(at(j))) {
        mtf(j);
        basis_.pop();
        move_to_front(j);
      }
    }
  }

  double max_excess(It t, It end, It& pivot) const {
    double best = 0.0;
    for (It k = t; k != end; ++k) {
      const double e = basis_.excess(at(k));
      if (e > best) {
        best = e;
        pivot = k;
      }
    }
    return best;
  }

  void pivot(It end) {
    It t = std::next(order_.begin());
    mtf(t);
    double max_e = 0.0;
    double old_sqr_r = -1.0;
    do {
      It piv;
      max_e = max_excess(t, end, piv);
      if (max_e > 0) {
        t = support_end_;
        if (t == piv) ++t;
        old_sqr_r = basis_.squared_radius();
        basis_.push(at(piv));
        mtf(support_end_);
        basis_.pop();
        move_to_front(piv);
      }
    } while (max_e > 0 && basis_.squared_radius() > old_sqr_r);
  }

  std::span<const Point> points_;
  std::size_t d_;
  SupportBasis basis_;
  std::list<std::size_t> order_;
  It support_end_;
};

constexpr std::size_t kExactMebMaxDim = 16;
constexpr double kApproxMebFactor = 1.0 + 1e-6;

Ball finish(std::span<const Point> points, std::vector<double> center) {
  Point c(std::move(center));
  double r = 0.0;
  for (const Point& p : points) r = std::max(r, distance(c, p));
  return Ball{std::move(c), r};
}

Ball exact_meb(std::span<const Point> points, std::size_t d) {
  MoveToFrontMeb solver(points, d);
  return finish(points, solver.center());
}

// Core-set iteration: exact ball of a growing subset until the farthest point
// is within the approximation factor.
Ball approximate_meb(std::span<const Point> points, std::size_t d) {
  std::vector<Point> core{points.front()};
  for (;;) {
    Ball b = exact_meb(core, d);
    std::size_t far = 0;
    double far_dist = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double dist = distance(b.center, points[i]);
      if (dist > far_dist) {
        far_dist = dist;
        far = i;
      }
    }
    if (far_dist <= kApproxMebFactor * b.radius || far_dist == 0.0 ||
        core.size() >= points.size()) {
      return finish(points, b.center.data());
    }
    core.push_back(points[far]);
  }
}

}  // namespace

Ball meb(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("meb of an empty point set");
  const std::size_t d = points.front().dim();
  require_dimension(points, d);
  if (d <= kExactMebMaxDim) return exact_meb(points, d);
  return approximate_meb(points, d);
}

bool meb_distance_lower_bound_check(std::span<const Point> set, const Point& z) {
  const Ball b = meb(set);
  const double k = distance(z, b.center);
  double farthest = 0.0;
  for (const Point& p : set) farthest = std::max(farthest, distance(z, p));
  const double bound = std::sqrt(b.radius * b.radius + k * k);
  return farthest >= bound - tolerance_for(bound);
}

}  // namespace geocluster
