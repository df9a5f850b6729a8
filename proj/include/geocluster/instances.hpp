#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geocluster/geometry.hpp"
#include "geocluster/supplier_solver.hpp"

namespace geocluster {

/// Simple undirected graph on vertices 1..n.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range vertices.
  void validate() const;
};

/// Edge list: a `p n m` header line, then m `e u v` lines. `c` and `#` lines are comments.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

/// Size of a minimum vertex cover, by exhaustive search (n <= 30).
std::size_t min_vertex_cover(const Graph& g);

/// Clients e_u + e_v per edge, facilities e_i per vertex, in R^n.
KSupplierInstance vc_gadget(const Graph& g, std::size_t k);

enum class Family { uniform_box, gaussian_clusters, grid };

/// Parses "uniform-box", "gaussian-clusters" or "grid".
Family parse_family(const std::string& name);
std::string family_name(Family family);

struct GeneratorParams {
  double box = 1.0;          // uniform-box side length
  double spread = 0.1;       // gaussian-clusters standard deviation
  double separation = 10.0;  // distance between consecutive planted centres
};

struct GeneratedPoints {
  std::vector<Point> points;
  /// Planted centres (gaussian-clusters only) and the largest point-to-planted-centre distance.
  std::vector<Point> planted_centers;
  std::optional<double> planted_cost;
};

/// Deterministic per (family, n, d, k, seed, params). The grid family lays out
/// the first n points of the unit grid with side ceil(n^(1/d)).
GeneratedPoints gen_random(Family family, std::size_t n, std::size_t d, std::size_t k,
                           std::uint64_t seed, const GeneratorParams& params = {});

struct JLReport {
  std::size_t target_dim = 0;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  bool accepted = false;
  std::size_t resamples = 0;  // rejected draws before the returned one
};

struct JLResult {
  std::vector<Point> points;
  JLReport report;
};

/// ceil(8 ln(max(n, 2))).
std::size_t default_jl_dim(std::size_t n);

/// Random Gaussian map R^d -> R^target_dim scaled by 1/sqrt(target_dim). Accepted
/// when every nonzero pairwise distance changes by a factor within [0.9, 1.1].
/// `identity` replaces the random map by the identity (requires target_dim == d).
JLResult jl_project(std::span<const Point> points, std::size_t target_dim, std::uint64_t seed,
                    std::size_t max_resamples, bool identity = false);

}  // namespace geocluster
