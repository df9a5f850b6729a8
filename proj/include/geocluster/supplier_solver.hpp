#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "geocluster/geometry.hpp"
#include "geocluster/search_limits.hpp"
#include "geocluster/separator.hpp"

namespace geocluster {

/// Clients C, candidate centres F (same dimension), and k >= 1.
struct KSupplierInstance {
  std::vector<Point> clients;
  std::vector<Point> facilities;
  std::size_t k = 1;

  std::size_t dim() const { return clients.empty() ? 0 : clients.front().dim(); }
  /// Throws std::invalid_argument / DimensionMismatch on a malformed instance.
  void validate() const;
};

struct SolveStats {
  std::uint64_t guesses = 0;        // separator guesses enumerated
  std::uint64_t nodes = 0;          // recursive feasibility calls
  std::uint64_t base_cases = 0;     // nodes decided by exhaustive set cover
  std::uint64_t branches = 0;       // total charged branches (budget unit)
  std::size_t max_depth = 0;
  std::size_t probes = 0;           // binary-search probes
  std::size_t separator_calls = 0;
  std::size_t separator_size_warnings = 0;
  double max_separator_ratio = 0.0;
  double wall_ms = 0.0;
};

/// A k-supplier / k-center answer. `cost` is recomputed from `centers`.
struct SolveReport {
  std::vector<Point> centers;
  /// Indices into the facility list when centres come from a finite set.
  std::vector<std::size_t> center_indices;
  double cost = 0.0;
  bool feasible = false;
  SolveStats stats;
};

/// max over clients of the distance to the nearest centre (+inf if no centres).
double clustering_cost(std::span<const Point> clients, std::span<const Point> centers);

/// Brute-force base-case rule. The search solves a node exhaustively when
/// k <= max(1, ceil(d ln(1/eps))) (if use_k_threshold), or |F'| <= facility_cutoff,
/// or |C'| <= client_cutoff. Nodes whose points cannot be separated are always
/// solved exhaustively.
struct BaseCaseRule {
  bool use_k_threshold = true;
  std::size_t facility_cutoff = 12;
  std::size_t client_cutoff = 4;
};

struct SearchOptions {
  BaseCaseRule base_case;
  SeparatorOptions separator;
  SearchLimits limits;
  /// Worker threads for the top-level guess enumeration; 0 = default_thread_count().
  unsigned threads = 0;
};

/// Hochbaum-Shmoys style 3-approximation. Requires |F| >= k.
SolveReport hs_3approx(const KSupplierInstance& instance);

struct FeasibilityOutcome {
  /// Indices into the facility list; empty optional when declared infeasible.
  std::optional<std::vector<std::size_t>> centers;
  SolveStats stats;
};

/// Decision procedure on a filtered instance scaled to probe radius 1: returns at
/// most k facilities with every client within 1 + eps, or nothing. Nothing is
/// returned only when no k facilities cover every client within 1 + eps.
FeasibilityOutcome feasibility_search(std::span<const Point> clients,
                                      std::span<const Point> facilities, std::size_t k,
                                      double eps, std::uint64_t seed,
                                      const SearchOptions& options = {});

/// Number of binary-search probes used for a user eps: ceil(log2(3/eps)) + 1.
std::size_t probe_budget(double eps);

/// (1 + eps)-approximate k-supplier. Requires |F| >= k and 0 < eps <= 1.
SolveReport solve_ksupplier(const KSupplierInstance& instance, double eps, std::uint64_t seed,
                            const SearchOptions& options = {});

/// (1 + eps)-approximate Euclidean k-center with centres anywhere in R^d.
SolveReport solve_kcenter(std::span<const Point> clients, std::size_t k, double eps,
                          std::uint64_t seed, const SearchOptions& options = {});

}  // namespace geocluster
