#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "geocluster/geometry.hpp"
#include "geocluster/nukc_general.hpp"
#include "geocluster/supplier_solver.hpp"

namespace geocluster {

/// Thrown when an exhaustive search would exceed its size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  double cost = 0.0;
  std::vector<Point> centers;
  std::vector<std::size_t> center_indices;  // facility indices (k-supplier only)
};

/// Exact k-supplier by enumerating k-subsets of F in lexicographic order.
/// Guard: C(|F|, k) <= 1e7.
OracleResult brute_ksupplier(const KSupplierInstance& instance);

/// Exact continuous k-center: best partition into <= k parts by max MEB radius.
/// Guard: |C| <= 12.
OracleResult brute_kcenter_continuous(std::span<const Point> clients, std::size_t k);

struct NUkCOracleResult {
  double dilation = 0.0;
  NUkCSolution solution;
};

/// Exact NUkC over a finite facility set: every assignment of a facility to each
/// of the k balls. Guard: |F|^k <= 1e7.
NUkCOracleResult brute_nukc(const NUkCInstance& instance);

/// Exact Euclidean NUkC with free centres. Guard: |C| <= 10.
NUkCOracleResult brute_nukc_euclidean(std::span<const Point> clients,
                                      std::span<const double> radii,
                                      std::span<const std::size_t> counts);

/// Farthest-first traversal from client (seed mod |C|); ties go to the lower index.
SolveReport gonzalez_2approx(std::span<const Point> clients, std::size_t k, std::uint64_t seed);

}  // namespace geocluster
