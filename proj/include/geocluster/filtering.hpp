#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "geocluster/geometry.hpp"

namespace geocluster {

/// Greedy eps-separated subset. `kept_indices[i]` is the input index of `kept[i]`.
struct FilterOutput {
  std::vector<Point> kept;
  std::vector<std::size_t> kept_indices;
  std::size_t dropped_count = 0;
};

/// Keeps p (in input order) iff it is more than eps from everything kept so far.
FilterOutput filter_clients(std::span<const Point> clients, double eps);

/// Keeps facility i iff d(i, kept) > eps and d(i, filtered_clients) <= 1 + eps.
/// Distances are in units of the probe radius (the instance is pre-scaled).
FilterOutput filter_facilities(std::span<const Point> facilities,
                               std::span<const Point> filtered_clients, double eps);

/// kept_size <= k * ceil((1 + 4/eps)^d). Saturates instead of overflowing.
bool size_guard(std::size_t kept_size, std::size_t k, double eps, std::size_t d);

/// Grid of spacing eps/sqrt(d) restricted to the ball of radius radius + eps/2
/// around `center`. Every point of B(center, radius) is within eps of the result.
/// The lattice passes through `center` unless `anchor` is given, in which case it
/// passes through `anchor` (nets of different balls then share one lattice).
std::vector<Point> ball_epsilon_net(const Point& center, double radius, double eps,
                                    const std::optional<Point>& anchor = std::nullopt);

}  // namespace geocluster
