#include "geocluster/nukc_general.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace geocluster {

void validate_radii(std::span<const double> radii, std::span<const std::size_t> counts) {
  if (radii.empty()) throw std::invalid_argument("NUkC: at least one radius is required");
  if (radii.size() != counts.size()) {
    throw std::invalid_argument("NUkC: radii and counts differ in length");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || !(radii[i] > 0.0)) {
      throw std::invalid_argument("NUkC: radii must be positive and finite");
    }
    if (i > 0 && !(radii[i] < radii[i - 1])) {
      throw std::invalid_argument("NUkC: radii must be strictly decreasing");
    }
    if (counts[i] == 0) throw std::invalid_argument("NUkC: counts must be positive");
  }
}

std::size_t NUkCInstance::k() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

void NUkCInstance::validate() const {
  validate_radii(radii, counts);
  if (clients.empty()) throw std::invalid_argument("NUkC: no clients");
  if (facilities.empty()) throw std::invalid_argument("NUkC: no facilities");
  for (std::size_t c : clients) {
    if (c >= metric.size()) throw std::invalid_argument("NUkC: client index out of range");
  }
  for (std::size_t f : facilities) {
    if (f >= metric.size()) throw std::invalid_argument("NUkC: facility index out of range");
  }
  if (cf_equal && clients != facilities) {
    throw std::invalid_argument("NUkC: cf_equal set but clients differ from facilities");
  }
}

NUkCInstance NUkCInstance::euclidean(std::vector<Point> clients, std::vector<Point> facilities,
                                     std::vector<double> radii, std::vector<std::size_t> counts) {
  if (clients.empty()) throw std::invalid_argument("NUkC: no clients");
  NUkCInstance inst;
  inst.radii = std::move(radii);
  inst.counts = std::move(counts);
  const std::size_t nc = clients.size();
  inst.cf_equal = facilities.empty();
  std::vector<Point> ground = std::move(clients);
  if (!inst.cf_equal) ground.insert(ground.end(), facilities.begin(), facilities.end());
  require_dimension(ground, ground.front().dim());
  inst.clients.resize(nc);
  std::iota(inst.clients.begin(), inst.clients.end(), 0);
  if (inst.cf_equal) {
    inst.facilities = inst.clients;
  } else {
    inst.facilities.resize(ground.size() - nc);
    std::iota(inst.facilities.begin(), inst.facilities.end(), nc);
  }
  inst.metric = Metric::euclidean(std::move(ground));
  inst.validate();
  return inst;
}

NUkCInstance NUkCInstance::from_matrix(DistanceMatrix matrix, std::vector<double> radii,
                                       std::vector<std::size_t> counts) {
  NUkCInstance inst;
  inst.radii = std::move(radii);
  inst.counts = std::move(counts);
  inst.clients.resize(matrix.size());
  std::iota(inst.clients.begin(), inst.clients.end(), 0);
  inst.facilities = inst.clients;
  inst.cf_equal = true;
  inst.metric = Metric::explicit_matrix(std::move(matrix));
  inst.validate();
  return inst;
}

double nukc_dilation(const NUkCInstance& instance, std::span<const NUkCBall> balls) {
  double worst = 0.0;
  for (std::size_t c : instance.clients) {
    double best = std::numeric_limits<double>::infinity();
    for (const NUkCBall& b : balls) {
      best = std::min(best, instance.metric.distance(c, b.center) / instance.radii[b.radius_index]);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double nukc_dilation(std::span<const Point> clients, std::span<const double> radii,
                     std::span<const NUkCBall> balls) {
  double worst = 0.0;
  for (const Point& p : clients) {
    double best = std::numeric_limits<double>::infinity();
    for (const NUkCBall& b : balls) {
      best = std::min(best, distance(p, b.point) / radii[b.radius_index]);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const NUkCInstance& inst, double alpha, BranchBudget& budget)
      : inst_(inst), alpha_(alpha), budget_(budget), factor_(inst.cf_equal ? 2.0 : 3.0) {
    const std::size_t n = inst.clients.size();
    nearest_.resize(n);
    nearest_distance_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.cf_equal) {
        nearest_[i] = inst.clients[i];
        nearest_distance_[i] = 0.0;
        continue;
      }
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t f : inst.facilities) {
        const double d = inst.metric.distance(inst.clients[i], f);
        if (d < best) {
          best = d;
          nearest_[i] = f;
        }
      }
      nearest_distance_[i] = best;
    }
  }

  std::optional<std::vector<NUkCBall>> run() {
    std::vector<bool> covered(inst_.clients.size(), false);
    std::vector<std::size_t> remaining = inst_.counts;
    std::vector<NUkCBall> balls;
    if (dfs(covered, remaining, balls)) return balls;
    return std::nullopt;
  }

 private:
  bool dfs(const std::vector<bool>& covered, std::vector<std::size_t>& remaining,
           std::vector<NUkCBall>& balls) {
    const auto it = std::find(covered.begin(), covered.end(), false);
    if (it == covered.end()) return true;
    const std::size_t p = static_cast<std::size_t>(it - covered.begin());
    const std::size_t center = nearest_[p];
    for (std::size_t i = 0; i < inst_.t(); ++i) {
      if (remaining[i] == 0) continue;
      // p must lie in some optimal ball of radius alpha r_i centred at a facility.
      if (!leq_tol(nearest_distance_[p], alpha_ * inst_.radii[i])) continue;
      budget_.charge();
      const double reach = factor_ * alpha_ * inst_.radii[i];
      std::vector<bool> next = covered;
      for (std::size_t q = 0; q < next.size(); ++q) {
        if (!next[q] && leq_tol(inst_.metric.distance(inst_.clients[q], center), reach)) {
          next[q] = true;
        }
      }
      --remaining[i];
      balls.push_back({center, {}, i});
      if (dfs(next, remaining, balls)) return true;
      balls.pop_back();
      ++remaining[i];
    }
    return false;
  }

  const NUkCInstance& inst_;
  double alpha_;
  BranchBudget& budget_;
  double factor_;
  std::vector<std::size_t> nearest_;
  std::vector<double> nearest_distance_;
};

void fill_points(const NUkCInstance& inst, std::vector<NUkCBall>& balls) {
  if (!inst.metric.is_euclidean()) return;
  for (NUkCBall& b : balls) b.point = inst.metric.points()[b.center];
}

std::optional<NUkCSolution> decide(const NUkCInstance& inst, double alpha, BranchBudget& budget) {
  CoverSearch search(inst, alpha, budget);
  auto balls = search.run();
  if (!balls) return std::nullopt;
  NUkCSolution sol;
  sol.balls = std::move(*balls);
  fill_points(inst, sol.balls);
  sol.alpha = alpha;
  sol.dilation = nukc_dilation(inst, sol.balls);
  const double factor = inst.cf_equal ? 2.0 : 3.0;
  if (!leq_tol(sol.dilation, factor * alpha)) {
    throw std::logic_error("nukc_cover_decision: cover exceeds its radius bound");
  }
  return sol;
}

}  // namespace

std::optional<NUkCSolution> nukc_cover_decision(const NUkCInstance& instance, double alpha,
                                                const SearchLimits& limits) {
  instance.validate();
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("nukc_cover_decision: alpha must be nonnegative");
  }
  BranchBudget budget(limits);
  auto sol = decide(instance, alpha, budget);
  if (sol) sol->branches = budget.branches();
  return sol;
}

NUkCSolution solve_nukc_general(const NUkCInstance& instance, const SearchLimits& limits) {
  instance.validate();
  const double factor = instance.cf_equal ? 2.0 : 3.0;
  // The decision only changes where d(c, f) = alpha r_i or d(c, f) = factor alpha r_i.
  std::vector<double> candidates;
  for (std::size_t c : instance.clients) {
    for (std::size_t f : instance.facilities) {
      const double d = instance.metric.distance(c, f);
      for (double r : instance.radii) {
        candidates.push_back(d / r);
        candidates.push_back(d / (factor * r));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  BranchBudget budget(limits);
  std::size_t lo = 0, hi = candidates.size() - 1;
  auto best = decide(instance, candidates[hi], budget);
  if (!best) throw std::logic_error("solve_nukc_general: largest candidate dilation failed");
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto sol = decide(instance, candidates[mid], budget)) {
      hi = mid;
      best = std::move(sol);
    } else {
      lo = mid + 1;
    }
  }
  best->branches = budget.branches();
  return *best;
}

}  // namespace geocluster
