#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "knnlrta/grid.hpp"

namespace knnlrta {

struct Path {
  std::vector<Coord> states;
  Cost cost = 0;

  bool empty() const { return states.empty(); }
  std::size_t size() const { return states.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Sum of edge costs along `states`, or kInfiniteCost if some step is not a legal move.
Cost path_cost(const GridMap& map, const std::vector<Coord>& states);

/// Empty string when `path` is a legal walk from `start` to `goal` whose stored cost matches
/// the re-summed edge costs; otherwise a description of the first problem found.
std::string path_error(const GridMap& map, const Path& path, Coord start, Coord goal);

// ---------------------------------------------------------------------------
// A*

struct AStarCounters {
  std::size_t expanded = 0;
  std::size_t generated = 0;
  std::size_t peak_open = 0;
  std::size_t closed = 0;
};

/// Incremental A* with persistent open and closed lists. Heap order: lowest f, then
/// highest g, then earliest insertion (which follows the fixed neighbor order).
/// Storage is dense and generation-stamped, so one instance can serve many queries.
class AStarSearch {
 public:
  explicit AStarSearch(const GridMap& map);

  /// Switches to another map, keeping buffers when the cell count allows.
  void bind(const GridMap& map);
  void reset(Coord start, Coord goal);

  /// Expands up to `budget` states. Returns how many were expanded.
  std::size_t expand(std::size_t budget);
  void run_to_completion() { expand(std::numeric_limits<std::size_t>::max()); }

  bool goal_expanded() const { return goal_expanded_; }
  /// Open list empty without reaching the goal.
  bool exhausted() const { return !goal_expanded_ && open_count_ == 0; }

  /// The most promising open state (the goal once it has been expanded).
  std::optional<Coord> best();
  /// A* tree parent of a generated state; nullopt for the start or ungenerated states.
  std::optional<Coord> parent(Coord c) const;
  bool closed(Coord c) const;
  Cost g(Coord c) const;

  /// Optimal path after goal_expanded(); empty path otherwise.
  Path extract_path() const;

  Coord start() const { return start_; }
  Coord goal() const { return goal_; }
  const AStarCounters& counters() const { return counters_; }
  std::size_t open_size() const { return open_count_; }

 private:
  struct Entry {
    Cost f;
    Cost g;
    std::uint64_t seq;
    StateId id;
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.f != b.f) return a.f > b.f;
      if (a.g != b.g) return a.g < b.g;
      return a.seq > b.seq;
    }
  };
  static constexpr std::uint8_t kUnseen = 0, kOpen = 1, kClosed = 2;

  std::uint8_t status(StateId s) const { return stamp_[s] == generation_ ? status_[s] : kUnseen; }
  void push(StateId s, Cost g, StateId parent);
  void drop_stale();

  const GridMap* map_;
  Coord start_{};
  Coord goal_{};
  std::uint32_t generation_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> status_;
  std::vector<Cost> g_;
  std::vector<StateId> parent_;
  std::vector<Entry> heap_;
  std::uint64_t seq_ = 0;
  std::size_t open_count_ = 0;
  bool goal_expanded_ = false;
  AStarCounters counters_;
};

/// Minimum-cost path, or nullopt when the goal is unreachable.
std::optional<Path> astar(const GridMap& map, Coord start, Coord goal, AStarCounters* counters = nullptr);

/// Exact single-source costs by plain Dijkstra, independent of the A* machinery.
class CostField {
 public:
  CostField(const GridMap& map, std::vector<Cost> costs) : width_(map.width()), costs_(std::move(costs)) {}
  Cost at(Coord c) const { return costs_[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x)]; }
  bool reachable(Coord c) const { return at(c) < kInfiniteCost; }
  const std::vector<Cost>& costs() const { return costs_; }

 private:
  std::int32_t width_;
  std::vector<Cost> costs_;
};

CostField dijkstra_oracle(const GridMap& map, Coord source);

// ---------------------------------------------------------------------------
// LRTA* and hill climbing

/// Learned heuristic toward one goal: octile distance unless overridden. Overrides only grow.
class HeuristicTable {
 public:
  explicit HeuristicTable(Coord goal) : goal_(goal) {}

  Coord goal() const { return goal_; }
  Cost operator()(Coord s) const {
    if (!overrides_.empty()) {
      if (auto it = overrides_.find(s); it != overrides_.end()) return it->second;
    }
    return octile_h(s, goal_);
  }
  /// Sets h(s) to max(h(s), value). Returns true if h(s) increased.
  bool raise(Coord s, Cost value);
  /// Number of states whose value differs from the octile default.
  std::size_t updated_count() const { return overrides_.size(); }
  const std::unordered_map<Coord, Cost>& overrides() const { return overrides_; }

 private:
  Coord goal_;
  std::unordered_map<Coord, Cost> overrides_;
};

class DeadEndError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MoveChoice {
  Coord next_state;
  Coord frontier_best;
  Cost f_value = 0;
  Cost g_value = 0;
  std::size_t generated = 0;
  std::size_t expanded = 0;
};

inline constexpr Cost kDefaultLookahead = kDiagonalCost;

/// Cost-limited lookahead from `s`: the frontier state minimizing g + h (ties to higher g,
/// then discovery order) and the first step toward it. With 14 <= g_max < 20 the frontier
/// is exactly the immediate successors. Throws DeadEndError if `s` has no successors.
MoveChoice select_move(const GridMap& map, Coord s, const HeuristicTable& h, Coord goal, Cost g_max);

struct MoveCounters {
  std::size_t generated = 0;
  std::size_t expanded = 0;
  std::size_t h_raises = 0;
};

/// One LRTA* planning step: choose the move, raise h(s) to g + h of the chosen frontier
/// state, and return the successor to move to. `goal` must equal `h.goal()`.
Coord lrta_step(const GridMap& map, Coord s, HeuristicTable& h, Coord goal, Cost g_max,
                MoveCounters* counters = nullptr);

inline constexpr std::size_t kUnlimitedSteps = std::numeric_limits<std::size_t>::max();

struct HillClimbResult {
  bool reached = false;
  std::size_t steps = 0;
  std::size_t generated = 0;
  Cost cost = 0;
  /// Visited states including `a`; only filled when requested.
  std::vector<Coord> trace;
};

/// Greedy climb from `a` toward `b`. Stops with failure on a local minimum or plateau of h
/// (h(s) <= min over successors), when `step_cap` moves are spent, or, uncapped, on a
/// revisited state. `h` defaults to plain octile distance; when given, its goal must be `b`.
HillClimbResult hill_climb(const GridMap& map, Coord a, Coord b, std::size_t step_cap = kUnlimitedSteps,
                           const HeuristicTable* h = nullptr, bool record_trace = false);

/// hill_climb(...).reached; adds the generated-state count to `*generated` when given.
bool hc_reachable(const GridMap& map, Coord a, Coord b, std::size_t step_cap = kUnlimitedSteps,
                  const HeuristicTable* h = nullptr, std::size_t* generated = nullptr);

}  // namespace knnlrta
