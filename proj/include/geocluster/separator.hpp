#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "geocluster/geometry.hpp"

namespace geocluster {

/// Balance constant ceil(2 sqrt(d))^d + 1. Saturates at UINT64_MAX.
std::uint64_t c_d(std::size_t d);

/// Largest side allowed by the balance bound: floor(n (1 - 1/c_d)).
std::size_t balance_bound(std::size_t n, std::size_t d);

struct SeparatorOptions {
  /// Soft size target: |Z| <= size_constant * n^(1 - 1/d).
  double size_constant = 64.0;
  std::size_t max_retries = 32;
  /// Hard cap on |Z| per attempt; protects against high-dimensional blowup.
  std::size_t max_points = 2'000'000;
};

/// Separator points Z and a partition (X1 = strictly inside the sphere, X2 = outside).
/// Satisfies: for p in X1 and i in X2, d(p, Z) <= d(p, i) and d(i, Z) <= d(p, i).
struct SeparatorResult {
  std::vector<Point> z;
  std::vector<std::size_t> x1;
  std::vector<std::size_t> x2;
  Ball sphere;
  std::size_t attempts = 0;
  /// |Z| / n^(1 - 1/d).
  double size_ratio = 0.0;
  /// True when size_ratio exceeds the configured constant (a diagnostic, not a failure).
  bool size_warning = false;
};

class SeparatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random-sphere Voronoi separator over >= 2 pairwise distinct points.
/// Deterministic for a fixed (points, seed).
SeparatorResult voronoi_separator(std::span<const Point> points, std::uint64_t seed,
                                  const SeparatorOptions& options = {});

/// Exact crossing-contract verifier, O(|Z| (|X1| + |X2|) + |X1| |X2|).
bool crossing_check(std::span<const Point> z, std::span<const Point> x1,
                    std::span<const Point> x2);

}  // namespace geocluster
