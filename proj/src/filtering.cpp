#include "geocluster/filtering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace geocluster {

namespace {

bool farther_than(const Point& p, std::span<const Point> set, double eps) {
  const double eps2 = eps * eps;
  for (const Point& q : set) {
    if (squared_distance(p, q) <= eps2) return false;
  }
  return true;
}

}  // namespace

FilterOutput filter_clients(std::span<const Point> clients, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("filter_clients: eps must be positive");
  FilterOutput out;
  for (std::size_t i = 0; i < clients.size(); ++i) {
    if (farther_than(clients[i], out.kept, eps)) {
      out.kept.push_back(clients[i]);
      out.kept_indices.push_back(i);
    } else {
      ++out.dropped_count;
    }
  }
  return out;
}

FilterOutput filter_facilities(std::span<const Point> facilities,
                               std::span<const Point> filtered_clients, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("filter_facilities: eps must be positive");
  FilterOutput out;
  const double reach = 1.0 + eps;
  for (std::size_t i = 0; i < facilities.size(); ++i) {
    const Point& f = facilities[i];
    if (farther_than(f, out.kept, eps) && leq_tol(distance_to_set(f, filtered_clients), reach)) {
      out.kept.push_back(f);
      out.kept_indices.push_back(i);
    } else {
      ++out.dropped_count;
    }
  }
  return out;
}

bool size_guard(std::size_t kept_size, std::size_t k, double eps, std::size_t d) {
  if (kept_size == 0) return true;
  const double per_center = std::ceil(std::pow(1.0 + 4.0 / eps, static_cast<double>(d)));
  const double bound = per_center * static_cast<double>(k);
  if (!std::isfinite(bound) || bound >= 9.0e18) return true;
  return static_cast<double>(kept_size) <= bound;
}

std::vector<Point> ball_epsilon_net(const Point& center, double radius, double eps,
                                    const std::optional<Point>& anchor) {
  if (!(radius > 0) || !(eps > 0)) {
    throw std::invalid_argument("ball_epsilon_net: radius and eps must be positive");
  }
  const std::size_t d = center.dim();
  const Point origin = anchor.value_or(center);
  if (origin.dim() != d) throw DimensionMismatch("ball_epsilon_net: anchor dimension mismatch");

  const double spacing = eps / std::sqrt(static_cast<double>(d));
  const double keep = radius + eps / 2.0;
  const double keep2 = keep * keep;

  // Lattice index range per axis covering [center - keep, center + keep].
  std::vector<long long> lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] = static_cast<long long>(std::ceil((center[a] - keep - origin[a]) / spacing));
    hi[a] = static_cast<long long>(std::floor((center[a] + keep - origin[a]) / spacing));
    if (lo[a] > hi[a]) return {center};
  }

  std::vector<Point> net;
  std::vector<long long> idx(lo);
  std::vector<double> coords(d);
  // Odometer over the box, pruning by the partial squared distance.
  for (;;) {
    double s = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      coords[a] = origin[a] + static_cast<double>(idx[a]) * spacing;
      const double diff = coords[a] - center[a];
      s += diff * diff;
    }
    if (s <= keep2 + tolerance_for(keep2)) net.emplace_back(coords);

    std::size_t a = 0;
    while (a < d && idx[a] == hi[a]) {
      idx[a] = lo[a];
      ++a;
    }
    if (a == d) break;
    ++idx[a];
  }
  // A ball smaller than the lattice cell may contain no lattice point at all;
  // the centre then covers it on its own.
  if (net.empty()) net.push_back(center);
  return net;
}

}  // namespace geocluster
