#pragma once

#include <vector>

#include "knnlrta/grid.hpp"

namespace knnlrta {

/// A compressed optimal path: start, zero or more subgoals, goal.
struct SubgoalRecord {
  std::vector<Coord> states;

  Coord start() const { return states.front(); }
  Coord end() const { return states.back(); }
  std::size_t subgoal_count() const { return states.size() < 2 ? 0 : states.size() - 2; }
  friend bool operator==(const SubgoalRecord&, const SubgoalRecord&) = default;
};

/// Dissimilarity of a query (s, goal) to a record with endpoints (start, end):
/// the larger of the two endpoint octile distances.
constexpr Cost endpoint_similarity(Coord s, Coord goal, Coord start, Coord end) {
  const Cost a = octile_h(s, start);
  const Cost b = octile_h(goal, end);
  return a > b ? a : b;
}

}  // namespace knnlrta
