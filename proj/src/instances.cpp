#include "geocluster/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "geocluster/random.hpp"

namespace geocluster {

void Graph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > n || v > n) {
      throw std::invalid_argument("graph: vertex out of range in edge " + std::to_string(u) +
                                  " " + std::to_string(v));
    }
    if (u == v) throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(u));
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw std::invalid_argument("graph: duplicate edge " + std::to_string(u) + " " +
                                  std::to_string(v));
    }
  }
}

Graph read_edge_list(std::istream& in) {
  Graph g;
  bool header = false;
  std::size_t expected = 0;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#' || tag == "c") continue;
    if (tag == "p") {
      if (header) fail("second header");
      std::string first;
      ss >> first;
      if (first == "edge") ss >> first;
      try {
        g.n = std::stoul(first);
      } catch (const std::exception&) {
        fail("bad vertex count");
      }
      if (!(ss >> expected)) fail("bad edge count");
      header = true;
    } else if (tag == "e") {
      if (!header) fail("edge before header");
      std::size_t u = 0, v = 0;
      if (!(ss >> u >> v)) fail("bad edge");
      g.edges.emplace_back(u, v);
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  if (!header) throw std::invalid_argument("edge list: missing 'p n m' header");
  if (g.edges.size() != expected) {
    throw std::invalid_argument("edge list: header promises " + std::to_string(expected) +
                                " edges, found " + std::to_string(g.edges.size()));
  }
  g.validate();
  return g;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_edge_list(in);
}

std::size_t min_vertex_cover(const Graph& g) {
  g.validate();
  if (g.n > 30) throw std::invalid_argument("min_vertex_cover: more than 30 vertices");
  std::size_t best = g.n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    const bool covers = std::all_of(g.edges.begin(), g.edges.end(), [&](auto e) {
      return ((mask >> (e.first - 1)) & 1U) || ((mask >> (e.second - 1)) & 1U);
    });
    if (covers) best = size;
  }
  return best;
}

KSupplierInstance vc_gadget(const Graph& g, std::size_t k) {
  g.validate();
  if (k < 1 || k > g.n) throw std::invalid_argument("vc_gadget: need 1 <= k <= n");
  if (g.edges.empty()) throw std::invalid_argument("vc_gadget: graph has no edges");
  KSupplierInstance inst;
  inst.k = k;
  for (auto [u, v] : g.edges) {
    Point p = Point::zeros(g.n);
    p[u - 1] = 1.0;
    p[v - 1] = 1.0;
    inst.clients.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    Point p = Point::zeros(g.n);
    p[i] = 1.0;
    inst.facilities.push_back(std::move(p));
  }
  return inst;
}

Family parse_family(const std::string& name) {
  if (name == "uniform-box") return Family::uniform_box;
  if (name == "gaussian-clusters") return Family::gaussian_clusters;
  if (name == "grid") return Family::grid;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::uniform_box: return "uniform-box";
    case Family::gaussian_clusters: return "gaussian-clusters";
    case Family::grid: return "grid";
  }
  return "";
}

GeneratedPoints gen_random(Family family, std::size_t n, std::size_t d, std::size_t k,
                           std::uint64_t seed, const GeneratorParams& params) {
  if (n < 1 || d < 1 || k < 1) throw std::invalid_argument("gen_random: n, d, k must be >= 1");
  GeneratedPoints out;
  Rng rng(seed);
  switch (family) {
    case Family::uniform_box:
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(d);
        for (double& x : c) x = rng.uniform(0.0, params.box);
        out.points.emplace_back(std::move(c));
      }
      break;
    case Family::gaussian_clusters: {
      for (std::size_t j = 0; j < k; ++j) {
        Point c = Point::zeros(d);
        c[0] = params.separation * double(j);
        out.planted_centers.push_back(std::move(c));
      }
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Point& center = out.planted_centers[i % k];
        std::vector<double> c(d);
        for (std::size_t a = 0; a < d; ++a) c[a] = center[a] + params.spread * rng.normal();
        Point p(std::move(c));
        cost = std::max(cost, distance(p, center));
        out.points.push_back(std::move(p));
      }
      out.planted_cost = cost;
      break;
    }
    case Family::grid: {
      std::size_t side = 1;
      while (std::pow(double(side), double(d)) < double(n)) ++side;
      std::vector<std::size_t> idx(d, 0);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(d);
        for (std::size_t a = 0; a < d; ++a) c[a] = double(idx[d - 1 - a]);
        out.points.emplace_back(std::move(c));
        for (std::size_t a = 0; a < d; ++a) {
          if (++idx[a] < side) break;
          idx[a] = 0;
        }
      }
      break;
    }
  }
  return out;
}

std::size_t default_jl_dim(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(8.0 * std::log(double(std::max<std::size_t>(n, 2)))));
}

namespace {

std::vector<Point> apply_map(std::span<const Point> points, const std::vector<double>& a,
                             std::size_t m) {
  const std::size_t d = points.front().dim();
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    std::vector<double> y(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += a[r * d + c] * p[c];
      y[r] = s;
    }
    out.emplace_back(std::move(y));
  }
  return out;
}

std::pair<double, double> distortion(std::span<const Point> before, std::span<const Point> after) {
  double lo = 1.0, hi = 1.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    for (std::size_t j = i + 1; j < before.size(); ++j) {
      const double d0 = distance(before[i], before[j]);
      if (d0 == 0.0) continue;
      const double ratio = distance(after[i], after[j]) / d0;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  return {lo, hi};
}

}  // namespace

JLResult jl_project(std::span<const Point> points, std::size_t target_dim, std::uint64_t seed,
                    std::size_t max_resamples, bool identity) {
  if (points.size() < 2) throw std::invalid_argument("jl_project: need at least two points");
  if (target_dim < 1) throw std::invalid_argument("jl_project: target_dim must be >= 1");
  const std::size_t d = points.front().dim();
  require_dimension(points, d);
  if (identity && target_dim != d) {
    throw std::invalid_argument("jl_project: identity map needs target_dim == d");
  }

  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(double(target_dim));
  JLResult best;
  double best_error = std::numeric_limits<double>::infinity();
  for (std::size_t draw = 0; draw <= max_resamples; ++draw) {
    std::vector<double> a(target_dim * d, 0.0);
    if (identity) {
      for (std::size_t i = 0; i < d; ++i) a[i * d + i] = 1.0;
    } else {
      for (double& x : a) x = scale * rng.normal();
    }
    JLResult attempt;
    attempt.points = apply_map(points, a, target_dim);
    const auto [lo, hi] = distortion(points, attempt.points);
    attempt.report = {target_dim, lo, hi, lo >= 0.9 && hi <= 1.1, draw};
    if (attempt.report.accepted) return attempt;
    const double error = std::max(1.0 - lo, hi - 1.0);
    if (error < best_error) {
      best_error = error;
      best = std::move(attempt);
    }
  }
  best.report.resamples = max_resamples;
  return best;
}

}  // namespace geocluster
