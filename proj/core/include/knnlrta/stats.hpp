#pragma once

#include <cstddef>

#include "knnlrta/grid.hpp"

namespace knnlrta {

/// Per-problem measurements shared by every algorithm. Memory is counted in stored states.
struct SearchStats {
  Cost solution_cost = 0;
  Cost optimal_cost = 0;
  std::size_t moves = 0;
  double planning_time_per_move_us = 0.0;
  std::size_t max_per_move_generated = 0;
  std::size_t peak_open = 0;
  std::size_t peak_closed = 0;
  std::size_t updated_h_states = 0;
  std::size_t db_states = 0;

  std::size_t strict_memory_states() const { return peak_open + peak_closed + updated_h_states; }
  std::size_t cumulative_memory_states() const { return strict_memory_states() + db_states; }

  /// Equality over everything except wall-clock timing.
  bool same_counters(const SearchStats& o) const {
    return solution_cost == o.solution_cost && optimal_cost == o.optimal_cost && moves == o.moves &&
           max_per_move_generated == o.max_per_move_generated && peak_open == o.peak_open &&
           peak_closed == o.peak_closed && updated_h_states == o.updated_h_states && db_states == o.db_states;
  }
};

}  // namespace knnlrta
