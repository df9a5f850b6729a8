#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace geocluster {

/// Safety rails for the exponential searches. Zero means unlimited.
struct SearchLimits {
  std::uint64_t max_branches = 0;
  std::int64_t timeout_ms = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t branches)
      : std::runtime_error(what), branches_(branches) {}
  std::uint64_t branches() const { return branches_; }

 private:
  std::uint64_t branches_;
};

/// Shared branch counter + deadline. Thread safe.
class BranchBudget {
 public:
  explicit BranchBudget(const SearchLimits& limits)
      : limits_(limits), start_(std::chrono::steady_clock::now()) {}

  /// Counts one branch; throws BudgetExceeded once a limit is hit.
  void charge() {
    const std::uint64_t n = branches_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (limits_.max_branches != 0 && n > limits_.max_branches) {
      throw BudgetExceeded("branch budget of " + std::to_string(limits_.max_branches) +
                               " exceeded",
                           n);
    }
    if (limits_.timeout_ms > 0 && (n & 0xff) == 0 && elapsed_ms() > double(limits_.timeout_ms)) {
      throw BudgetExceeded("timeout of " + std::to_string(limits_.timeout_ms) + " ms exceeded", n);
    }
  }

  std::uint64_t branches() const { return branches_.load(std::memory_order_relaxed); }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  SearchLimits limits_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> branches_{0};
};

/// Worker count: hardware concurrency, capped by GEOCLUSTER_THREADS when set.
unsigned default_thread_count();

}  // namespace geocluster
