#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "knnlrta/grid.hpp"

namespace knnlrta {

struct Problem {
  Coord start;
  Coord goal;
  std::optional<Cost> optimal_cost;

  friend bool operator==(const Problem&, const Problem&) = default;
};

class ProblemExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultDrawLimit = 1'000'000;

/// Draws `count` distinct (start, goal) pairs whose optimal cost is at least `min_cost`.
/// Optimal costs come from A*. Deterministic in `seed`.
/// Throws ProblemExhaustedError when `draw_limit` draws pass without filling the set.
std::vector<Problem> generate_problems(const GridMap& map, std::size_t count, Cost min_cost, std::uint64_t seed,
                                       std::uint64_t draw_limit = kDefaultDrawLimit);

/// Desk-scale analog of the long-problem constraint: 2 * (width + height) deci-cost.
inline Cost default_min_cost(const GridMap& map) { return 2 * (static_cast<Cost>(map.width()) + map.height()); }

}  // namespace knnlrta
