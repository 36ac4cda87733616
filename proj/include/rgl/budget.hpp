#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>

namespace rgl {

/// Work cap shared by the bounded searches: a node count and an optional
/// wall-clock deadline.
struct Budget {
  std::uint64_t max_nodes = 50'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static Budget from_millis(std::uint64_t ms, std::uint64_t nodes = 50'000'000) {
    Budget b;
    b.max_nodes = nodes;
    b.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    return b;
  }
};

/// Counts nodes against a Budget; checks the clock every 4096 ticks.
class BudgetMeter {
 public:
  explicit BudgetMeter(const Budget& b) : budget_(b) {}

  bool tick() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) exhausted_ = true;
    if (budget_.deadline && (nodes_ & 0xfff) == 0 &&
        std::chrono::steady_clock::now() > *budget_.deadline)
      exhausted_ = true;
    return !exhausted_;
  }
  bool exhausted() const noexcept { return exhausted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  Budget budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace rgl
