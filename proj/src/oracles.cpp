#include "geocluster/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace geocluster {

namespace {

constexpr double kEnumerationGuard = 1e7;

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

std::vector<std::size_t> expand_counts(std::span<const std::size_t> counts) {
  std::vector<std::size_t> cls;
  for (std::size_t i = 0; i < counts.size(); ++i) cls.insert(cls.end(), counts[i], i);
  return cls;
}

}  // namespace

OracleResult brute_ksupplier(const KSupplierInstance& instance) {
  instance.validate();
  const std::size_t nf = instance.facilities.size();
  if (nf == 0) throw std::invalid_argument("brute_ksupplier: no facilities");
  const std::size_t k = std::min(instance.k, nf);
  if (binomial(nf, k) > kEnumerationGuard) {
    throw GuardExceeded("brute_ksupplier: C(" + std::to_string(nf) + ", " + std::to_string(k) +
                        ") exceeds 1e7");
  }
  const std::size_t nc = instance.clients.size();
  std::vector<double> dist(nc * nf);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t f = 0; f < nf; ++f) {
      dist[c * nf + f] = distance(instance.clients[c], instance.facilities[f]);
    }
  }

  std::vector<std::size_t> pos(k);
  std::iota(pos.begin(), pos.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_pos;
  for (;;) {
    double cost = 0.0;
    for (std::size_t c = 0; c < nc && cost < best; ++c) {
      double near = std::numeric_limits<double>::infinity();
      for (std::size_t f : pos) near = std::min(near, dist[c * nf + f]);
      cost = std::max(cost, near);
    }
    if (cost < best) {
      best = cost;
      best_pos = pos;
    }
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == nf - k + (i - 1)) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
  OracleResult r;
  r.cost = best;
  r.center_indices = best_pos;
  for (std::size_t f : best_pos) r.centers.push_back(instance.facilities[f]);
  return r;
}

OracleResult brute_kcenter_continuous(std::span<const Point> clients, std::size_t k) {
  if (clients.empty()) throw std::invalid_argument("brute_kcenter_continuous: no clients");
  if (k == 0) throw std::invalid_argument("brute_kcenter_continuous: k must be at least 1");
  if (clients.size() > 12) throw GuardExceeded("brute_kcenter_continuous: more than 12 clients");
  require_dimension(clients, clients.front().dim());

  const std::size_t n = clients.size();
  struct Part {
    std::vector<Point> points;
    Ball ball;
  };
  std::vector<Part> parts;
  parts.reserve(k);
  double best = std::numeric_limits<double>::infinity();
  std::vector<Point> best_centers;

  // Restricted-growth enumeration: point i joins an existing part or opens the next one.
  std::function<void(std::size_t, double)> dfs = [&](std::size_t i, double cost) {
    if (cost >= best) return;
    if (i == n) {
      best = cost;
      best_centers.clear();
      for (const Part& p : parts) best_centers.push_back(p.ball.center);
      return;
    }
    for (std::size_t j = 0; j < parts.size(); ++j) {
      Part& part = parts[j];
      const Ball saved = part.ball;
      part.points.push_back(clients[i]);
      if (!part.ball.contains(clients[i])) part.ball = meb(part.points);
      dfs(i + 1, std::max(cost, part.ball.radius));
      parts[j].points.pop_back();
      parts[j].ball = saved;
    }
    if (parts.size() < k) {
      parts.push_back(Part{{clients[i]}, Ball{clients[i], 0.0}});
      dfs(i + 1, cost);
      parts.pop_back();
    }
  };
  dfs(0, 0.0);

  OracleResult r;
  r.cost = best;
  r.centers = std::move(best_centers);
  return r;
}

NUkCOracleResult brute_nukc(const NUkCInstance& instance) {
  instance.validate();
  const std::size_t k = instance.k();
  const std::size_t nf = instance.facilities.size();
  if (std::pow(double(nf), double(k)) > kEnumerationGuard) {
    throw GuardExceeded("brute_nukc: " + std::to_string(nf) + "^" + std::to_string(k) +
                        " assignments exceed 1e7");
  }
  const std::vector<std::size_t> cls = expand_counts(instance.counts);
  const std::size_t nc = instance.clients.size();
  std::vector<double> dist(nc * nf);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t f = 0; f < nf; ++f) {
      dist[c * nf + f] = instance.metric.distance(instance.clients[c], instance.facilities[f]);
    }
  }

  // Odometer over facility choices; slots of one class take nondecreasing
  // facility positions (their order does not matter). Reusing a facility within
  // a class stands in for leaving a ball unused.
  std::vector<std::size_t> choice(k, 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_choice;
  auto canonical = [&] {
    for (std::size_t s = 1; s < k; ++s) {
      if (cls[s] == cls[s - 1] && choice[s] < choice[s - 1]) return false;
    }
    return true;
  };
  for (;;) {
    if (canonical()) {
      double worst = 0.0;
      for (std::size_t c = 0; c < nc && worst < best; ++c) {
        double near = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < k; ++s) {
          near = std::min(near, dist[c * nf + choice[s]] / instance.radii[cls[s]]);
        }
        worst = std::max(worst, near);
      }
      if (worst < best) {
        best = worst;
        best_choice = choice;
      }
    }
    std::size_t s = k;
    while (s > 0 && choice[s - 1] == nf - 1) choice[--s] = 0;
    if (s == 0) break;
    ++choice[s - 1];
  }

  NUkCOracleResult r;
  r.dilation = best;
  for (std::size_t s = 0; s < k; ++s) {
    NUkCBall b{instance.facilities[best_choice[s]], {}, cls[s]};
    if (instance.metric.is_euclidean()) b.point = instance.metric.points()[b.center];
    r.solution.balls.push_back(std::move(b));
  }
  r.solution.dilation = nukc_dilation(instance, r.solution.balls);
  r.solution.alpha = best;
  return r;
}

NUkCOracleResult brute_nukc_euclidean(std::span<const Point> clients,
                                      std::span<const double> radii,
                                      std::span<const std::size_t> counts) {
  validate_radii(radii, counts);
  if (clients.empty()) throw std::invalid_argument("brute_nukc_euclidean: no clients");
  if (clients.size() > 10) throw GuardExceeded("brute_nukc_euclidean: more than 10 clients");
  require_dimension(clients, clients.front().dim());

  const std::vector<std::size_t> cls = expand_counts(counts);
  const std::size_t k = cls.size();
  const std::size_t n = clients.size();
  struct Part {
    std::vector<Point> points;
    Ball ball;
  };
  std::vector<Part> parts;
  parts.reserve(k);

  // Parts sorted by decreasing MEB radius are matched with the slots in
  // decreasing radius order. If a larger part were given a smaller radius than a
  // smaller part, swapping the two radii does not increase the larger of the two
  // ratios, so this matching minimises the largest ratio.
  auto matched_dilation = [&](std::vector<std::size_t>* order) {
    std::vector<std::size_t> idx(parts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return parts[a].ball.radius > parts[b].ball.radius;
    });
    double worst = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      worst = std::max(worst, parts[idx[j]].ball.radius / radii[cls[j]]);
    }
    if (order) *order = std::move(idx);
    return worst;
  };

  double best = std::numeric_limits<double>::infinity();
  NUkCSolution best_sol;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    // Growing a part or adding a new empty-radius part never lowers the matching value.
    if (matched_dilation(nullptr) >= best) return;
    if (i == n) {
      std::vector<std::size_t> order;
      best = matched_dilation(&order);
      best_sol.balls.clear();
      for (std::size_t j = 0; j < order.size(); ++j) {
        best_sol.balls.push_back({kNoIndex, parts[order[j]].ball.center, cls[j]});
      }
      return;
    }
    for (std::size_t j = 0; j < parts.size(); ++j) {
      Part& part = parts[j];
      const Ball saved = part.ball;
      part.points.push_back(clients[i]);
      if (!part.ball.contains(clients[i])) part.ball = meb(part.points);
      dfs(i + 1);
      parts[j].points.pop_back();
      parts[j].ball = saved;
    }
    if (parts.size() < k) {
      parts.push_back(Part{{clients[i]}, Ball{clients[i], 0.0}});
      dfs(i + 1);
      parts.pop_back();
    }
  };
  dfs(0);

  NUkCOracleResult r;
  r.dilation = best;
  r.solution = std::move(best_sol);
  r.solution.alpha = best;
  r.solution.dilation = nukc_dilation(clients, radii, r.solution.balls);
  return r;
}

SolveReport gonzalez_2approx(std::span<const Point> clients, std::size_t k, std::uint64_t seed) {
  if (clients.empty()) throw std::invalid_argument("gonzalez_2approx: no clients");
  if (k == 0) throw std::invalid_argument("gonzalez_2approx: k must be at least 1");
  require_dimension(clients, clients.front().dim());
  const std::size_t n = clients.size();

  SolveReport r;
  std::vector<double> near(n, std::numeric_limits<double>::infinity());
  std::size_t next = static_cast<std::size_t>(seed % n);
  while (r.center_indices.size() < std::min(k, n)) {
    const std::size_t chosen = next;
    r.center_indices.push_back(chosen);
    r.centers.push_back(clients[chosen]);
    double far = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      near[i] = std::min(near[i], distance(clients[i], clients[chosen]));
      if (near[i] > far) {
        far = near[i];
        next = i;
      }
    }
    if (far <= 0.0) break;
  }
  r.cost = clustering_cost(clients, r.centers);
  r.feasible = true;
  return r;
}

}  // namespace geocluster
