#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "knnlrta/knn_agent.hpp"
#include "knnlrta/problems.hpp"
#include "knnlrta/search.hpp"
#include "knnlrta/stats.hpp"

namespace knnlrta {

inline constexpr std::size_t kUnlimitedSlice = std::numeric_limits<std::size_t>::max();

struct TbaConfig {
  std::size_t slice = kUnlimitedSlice;  // expansion budget per move
  std::size_t trace_ratio = 10;         // back-trace steps that cost as much as one expansion
  std::uint64_t move_budget_factor = 10'000;

  void validate() const;
};

struct TbaResult {
  Path path;
  SearchStats stats;
  std::size_t max_expansions_per_move = 0;
  std::size_t backtrack_moves = 0;
  std::size_t wait_steps = 0;  // planning iterations in which the agent stayed put
};

// Time-bounded A*: one persistent A* search is advanced a slice at a time. After each slice
// the principal path (start to the most promising open state) is re-traced through the
// closed list, and the agent takes one step along it, or one step back along its own trail
// when it is not on that path.
//
// Slice accounting: while the goal is unexpanded, ceil(slice / 2) expansions are made and
// the rest of the slice pays for tracing at trace_ratio steps per expansion; once the goal
// is expanded the whole slice goes to tracing. At least one trace step is made per move.
TbaResult tba_solve(const GridMap& map, const Problem& problem, const TbaConfig& cfg);

}  // namespace knnlrta
