#include "geocluster/separator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "geocluster/random.hpp"

namespace geocluster {

std::uint64_t c_d(std::size_t d) {
  if (d == 0) throw std::invalid_argument("c_d: dimension must be positive");
  // Smallest integer s with s^2 >= 4d, i.e. ceil(2 sqrt(d)) without rounding error.
  std::uint64_t s = static_cast<std::uint64_t>(std::floor(2.0 * std::sqrt(double(d))));
  while (s * s < 4 * d) ++s;
  while (s > 0 && (s - 1) * (s - 1) >= 4 * d) --s;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t power = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (power > (kMax - 1) / s) return kMax;
    power *= s;
  }
  return power + 1;
}

std::size_t balance_bound(std::size_t n, std::size_t d) {
  const std::uint64_t c = c_d(d);
  const std::uint64_t min_side = n / c + (n % c != 0 ? 1 : 0);
  return n - static_cast<std::size_t>(min_side);
}

bool crossing_check(std::span<const Point> z, std::span<const Point> x1,
                    std::span<const Point> x2) {
  if (x1.empty() || x2.empty()) return true;
  std::vector<double> near1(x1.size()), near2(x2.size());
  for (std::size_t i = 0; i < x1.size(); ++i) near1[i] = distance_to_set(x1[i], z);
  for (std::size_t j = 0; j < x2.size(); ++j) near2[j] = distance_to_set(x2[j], z);
  for (std::size_t i = 0; i < x1.size(); ++i) {
    for (std::size_t j = 0; j < x2.size(); ++j) {
      const double dij = distance(x1[i], x2[j]);
      if (near1[i] > dij || near2[j] > dij) return false;
    }
  }
  return true;
}

namespace {

struct Sphere {
  Point center;
  double radius;
};

// Adaptive net on the sphere: faces of the circumscribed cube are subdivided
// until each cell image (within h of its centre image t) satisfies
// safety * h <= d(t, X). Then every sphere point t' has d(t', Z) <= d(t', X).
class SphereNet {
 public:
  SphereNet(std::span<const Point> points, const Sphere& sphere, double safety,
            std::size_t max_points)
      : points_(points), sphere_(sphere), safety_(safety), max_points_(max_points) {}

  bool build(std::vector<Point>& out) {
    const std::size_t d = sphere_.center.dim();
    const double lipschitz = sphere_.radius * std::sqrt(double(d - 1));
    struct Cell {
      std::size_t axis;
      double sign;
      std::vector<double> mid;  // coordinates on the d-1 free axes
      double half;
    };
    std::vector<Cell> stack;
    for (std::size_t axis = d; axis-- > 0;) {
      stack.push_back({axis, +1.0, std::vector<double>(d - 1, 0.0), 1.0});
      stack.push_back({axis, -1.0, std::vector<double>(d - 1, 0.0), 1.0});
    }
    std::vector<double> u(d);
    while (!stack.empty()) {
      Cell cell = std::move(stack.back());
      stack.pop_back();
      double norm2 = 0.0;
      for (std::size_t a = 0, f = 0; a < d; ++a) {
        u[a] = (a == cell.axis) ? cell.sign : cell.mid[f++];
        norm2 += u[a] * u[a];
      }
      const double scale = sphere_.radius / std::sqrt(norm2);
      std::vector<double> t(d);
      for (std::size_t a = 0; a < d; ++a) t[a] = sphere_.center[a] + u[a] * scale;
      Point tp(std::move(t));
      const double h = lipschitz * cell.half;
      if (safety_ * h <= distance_to_set(tp, points_)) {
        out.push_back(std::move(tp));
        if (out.size() > max_points_) return false;
        continue;
      }
      const std::size_t free = d - 1;
      const double child = cell.half / 2.0;
      for (std::size_t mask = (std::size_t{1} << free); mask-- > 0;) {
        Cell c{cell.axis, cell.sign, cell.mid, child};
        for (std::size_t f = 0; f < free; ++f) c.mid[f] += ((mask >> f) & 1U) ? child : -child;
        stack.push_back(std::move(c));
      }
    }
    return true;
  }

 private:
  std::span<const Point> points_;
  Sphere sphere_;
  double safety_;
  std::size_t max_points_;
};

void require_distinct(std::span<const Point> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) {
        throw std::invalid_argument("voronoi_separator: points " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
      }
    }
  }
}

// Radius in a gap of the sorted distances so that the inside count is balanced.
// Prefers gaps that intersect [lo, hi]; returns a negative value if none exists.
double balanced_gap_radius(const std::vector<double>& sorted, std::size_t min_inside,
                           std::size_t max_inside, double lo, double hi) {
  double best = -1.0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t a = std::max<std::size_t>(min_inside, 1); a <= max_inside && a < sorted.size();
       ++a) {
    const double below = sorted[a - 1];
    const double above = sorted[a];
    if (!(above > below)) continue;
    const double mid = 0.5 * (below + above);
    const double overlap = std::min(above, hi) - std::max(below, lo);
    // Intersecting gaps first, then by relative gap width.
    const double score = (overlap > 0 ? 1e6 : 0.0) + (above - below) / above;
    if (score > best_score) {
      best_score = score;
      best = mid;
    }
  }
  return best;
}

}  // namespace

SeparatorResult voronoi_separator(std::span<const Point> points, std::uint64_t seed,
                                  const SeparatorOptions& options) {
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("voronoi_separator: need at least two points");
  const std::size_t d = points.front().dim();
  require_dimension(points, d);
  require_distinct(points);

  const std::size_t bound = balance_bound(n, d);
  const std::size_t min_inside = n - bound;
  const std::size_t m = std::max<std::size_t>(1, min_inside);

  // Distance from each point to its m-th nearest other point.
  std::vector<double> nn_radius(n);
  std::vector<std::vector<double>> sorted_from(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = sorted_from[i];
    row.resize(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = distance(points[i], points[j]);
    std::sort(row.begin(), row.end());
    nn_radius[i] = row[std::min(m, n - 1)];
  }
  std::vector<std::size_t> centers(n);
  std::iota(centers.begin(), centers.end(), 0);
  std::stable_sort(centers.begin(), centers.end(),
                   [&](std::size_t a, std::size_t b) { return nn_radius[a] < nn_radius[b]; });

  Rng rng(seed);
  const double exponent = 1.0 - 1.0 / double(d);
  const double size_norm = std::pow(double(n), exponent);
  double safety = 2.2;
  std::size_t center_rank = 0;

  for (std::size_t attempt = 1; attempt <= options.max_retries; ++attempt) {
    const std::size_t ci = centers[center_rank % n];
    const double r = nn_radius[ci];
    double radius = rng.uniform(r, 2.0 * r);

    std::size_t inside = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (double dist : sorted_from[ci]) {
      if (dist < radius) ++inside;
      gap = std::min(gap, std::abs(dist - radius));
    }
    if (inside < min_inside || inside > bound || !(gap > 1e-12 * radius)) {
      radius = balanced_gap_radius(sorted_from[ci], min_inside, bound, r, 2.0 * r);
      if (radius < 0) {
        ++center_rank;
        continue;
      }
    }

    SeparatorResult result;
    result.sphere = Ball{points[ci], radius};
    for (std::size_t i = 0; i < n; ++i) {
      (distance(points[i], points[ci]) < radius ? result.x1 : result.x2).push_back(i);
    }
    if (result.x1.size() > bound || result.x2.size() > bound) {
      ++center_rank;
      continue;
    }

    SphereNet net(points, Sphere{points[ci], radius}, safety, options.max_points);
    if (!net.build(result.z)) {
      ++center_rank;
      continue;
    }

    std::vector<Point> p1, p2;
    for (std::size_t i : result.x1) p1.push_back(points[i]);
    for (std::size_t i : result.x2) p2.push_back(points[i]);
    if (!crossing_check(result.z, p1, p2)) {
      // Rounding defeated the margin; refine the net and try again.
      safety *= 2.0;
      continue;
    }

    result.attempts = attempt;
    result.size_ratio = double(result.z.size()) / size_norm;
    result.size_warning = result.size_ratio > options.size_constant;
    return result;
  }
  throw SeparatorError("voronoi_separator: no valid separator after " +
                       std::to_string(options.max_retries) + " attempts");
}

}  // namespace geocluster
