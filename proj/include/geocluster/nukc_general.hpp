#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "geocluster/geometry.hpp"
#include "geocluster/search_limits.hpp"

namespace geocluster {

/// Non-uniform k-center: cover the clients with counts[i] balls of radius
/// alpha * radii[i] for every class i, minimising the dilation alpha.
/// Clients and facilities are indices into the metric's ground set.
struct NUkCInstance {
  Metric metric;
  std::vector<std::size_t> clients;
  std::vector<std::size_t> facilities;
  std::vector<double> radii;          // strictly decreasing, positive
  std::vector<std::size_t> counts;    // positive, one per radius
  bool cf_equal = false;              // facilities == clients

  std::size_t k() const;
  std::size_t t() const { return radii.size(); }
  void validate() const;

  /// Euclidean instance; an empty facility list means F = C.
  static NUkCInstance euclidean(std::vector<Point> clients, std::vector<Point> facilities,
                                std::vector<double> radii, std::vector<std::size_t> counts);
  /// Metric instance with C = F = the whole ground set.
  static NUkCInstance from_matrix(DistanceMatrix matrix, std::vector<double> radii,
                                  std::vector<std::size_t> counts);
};

/// Throws std::invalid_argument unless radii are strictly decreasing and
/// positive, counts are positive and t <= k.
void validate_radii(std::span<const double> radii, std::span<const std::size_t> counts);

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct NUkCBall {
  std::size_t center = kNoIndex;  // ground-set index when the centre is an input element
  Point point;                    // centre coordinates (Euclidean instances only)
  std::size_t radius_index = 0;
};

struct NUkCSolution {
  std::vector<NUkCBall> balls;
  /// max over clients of min over balls d(client, centre) / radii[radius_index].
  double dilation = 0.0;
  /// Dilation hypothesis the search succeeded at.
  double alpha = 0.0;
  std::uint64_t branches = 0;
};

/// Branching cover at dilation alpha. Balls have radius 3 alpha r_i
/// (2 alpha r_i when cf_equal). Succeeds whenever a cover at dilation alpha exists.
std::optional<NUkCSolution> nukc_cover_decision(const NUkCInstance& instance, double alpha,
                                                const SearchLimits& limits = {});

/// 3-approximation (2 when cf_equal) by search over the finite candidate dilations.
NUkCSolution solve_nukc_general(const NUkCInstance& instance, const SearchLimits& limits = {});

/// Recomputes the dilation of `balls` on the clients of `instance`.
double nukc_dilation(const NUkCInstance& instance, std::span<const NUkCBall> balls);

/// Same for Euclidean clients and ball centres given as points.
double nukc_dilation(std::span<const Point> clients, std::span<const double> radii,
                     std::span<const NUkCBall> balls);

}  // namespace geocluster
