#include <set>
#include <string>
#include <utility>

#include "knnlrta/problems.hpp"
#include "knnlrta/rng.hpp"
#include "knnlrta/search.hpp"

namespace knnlrta {

std::vector<Problem> generate_problems(const GridMap& map, std::size_t count, Cost min_cost, std::uint64_t seed,
                                       std::uint64_t draw_limit) {
  std::vector<Problem> out;
  if (count == 0) return out;
  if (map.passable_count() < 2) throw std::invalid_argument("map needs at least two passable cells");

  Rng rng(seed);
  std::set<std::pair<StateId, StateId>> used;
  std::uint64_t draws = 0;
  while (out.size() < count) {
    if (draws++ >= draw_limit) {
      throw ProblemExhaustedError("found only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                                  " problems with optimal cost >= " + std::to_string(min_cost) + " in " +
                                  std::to_string(draw_limit) + " draws");
    }
    const Coord start = rng.coord(map);
    const Coord goal = rng.coord(map);
    if (start == goal || !map.passable(start) || !map.passable(goal)) continue;
    const auto key = std::make_pair(map.id(start), map.id(goal));
    if (used.contains(key)) continue;
    const auto path = astar(map, start, goal);
    if (!path || path->cost < min_cost) continue;
    used.insert(key);
    out.push_back(Problem{start, goal, path->cost});
  }
  return out;
}

}  // namespace knnlrta
