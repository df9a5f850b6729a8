#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geocluster/geometry.hpp"
#include "geocluster/nukc_general.hpp"
#include "geocluster/search_limits.hpp"

namespace geocluster {

/// One point addition on the successful branch.
struct CoresetStep {
  std::size_t slot = 0;
  std::size_t point = 0;      // client index
  double delta = 0.0;         // distance to the nearest nonempty slot centre (0 for the seed)
  double meb_radius = 0.0;    // radius of the slot MEB after the addition
  double lambda = 0.0;        // meb_radius / ((1 + eps) rho)
  std::size_t slot_size = 0;  // size after the addition
  bool recurrence_ok = true;  // lambda >= (1 + previous^2) / 2 - 1e-9
};

/// Core-set slots, one per ball of the radius hypothesis, sorted by decreasing radius.
struct CoresetState {
  std::vector<double> radius;                  // rho_j
  std::vector<std::vector<std::size_t>> slots; // S_j (client indices)
  std::vector<Ball> mebs;                      // MEB of S_j (meaningless when empty)
  std::vector<CoresetStep> trace;
};

struct EuclidCover {
  /// Expanded ball B(c_{B(S_j)}, (1 + eps) rho_j) for each nonempty slot j.
  std::vector<Ball> balls;
  std::vector<std::size_t> ball_slot;
  CoresetState state;
  std::size_t slot_capacity = 0;
  std::uint64_t branches = 0;
};

/// Slot capacity ceil(2 / eps).
std::size_t coreset_capacity(double eps);

/// Decision at a fixed radius hypothesis (one radius per ball, any order).
/// Succeeds whenever the clients can be covered by balls of exactly these radii.
std::optional<EuclidCover> nukc_euclid_decision(std::span<const Point> clients,
                                                std::vector<double> scaled_radii, double eps,
                                                std::uint64_t seed,
                                                const SearchLimits& limits = {});

struct EuclidNUkCResult {
  NUkCSolution solution;                  // ball points carry the centres
  std::optional<EuclidCover> cover;       // trace of the best decision (absent if unused)
  std::size_t probes = 0;
  double lower_bound = 0.0;               // the optimum is at least this
};

/// (1 + eps)-approximate Euclidean NUkC with centres anywhere in R^d.
EuclidNUkCResult solve_nukc_euclidean(std::span<const Point> clients,
                                      std::span<const double> radii,
                                      std::span<const std::size_t> counts, double eps,
                                      std::uint64_t seed, const SearchLimits& limits = {});

}  // namespace geocluster
