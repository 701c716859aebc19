#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "knnlrta/problems.hpp"
#include "knnlrta/search.hpp"
#include "knnlrta/stats.hpp"
#include "knnlrta/subgoal_db.hpp"

namespace knnlrta {

struct AgentConfig {
  std::size_t m = 10;            // candidate records checked for reachability
  std::size_t hc_cap = 250;      // online hill-climbing step cap
  double quota_mult = 3.0;       // travel quota after a failed selection, times octile distance
  Cost g_max = kDefaultLookahead;
  bool use_kd_index = true;      // false: candidate stage by linear scan
  std::uint64_t move_budget_factor = 10'000;

  /// Throws std::invalid_argument unless m >= 1, hc_cap >= 1, quota_mult > 1, g_max >= 10.
  void validate() const;
};

class MoveBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Cost similarity(Coord s, Coord goal, const SubgoalRecord& record);

struct SubgoalPlan {
  enum class Source { Record, DirectGoal, Fallback };

  std::vector<Coord> targets;  // pursued in order; the last one is the global goal
  Source source = Source::Fallback;
  std::optional<std::uint32_t> record;
  /// Index of the record's last subgoal in `targets`. On reaching it the agent checks whether
  /// the global goal is reachable and, if so, skips the record's end.
  std::optional<std::size_t> shortcut_at;
};

struct SelectionCounters {
  std::size_t generated = 0;
  std::size_t reach_checks = 0;
  std::size_t candidates = 0;
};

/// Direct check toward the goal, then the M most similar records, accepting the first whose
/// start is reachable from `s` and whose end reaches `goal`. All checks use cfg.hc_cap.
SubgoalPlan select_record(const GridMap& map, Coord s, Coord goal, const SubgoalDatabase& db, const AgentConfig& cfg,
                          SelectionCounters* counters = nullptr);

/// One stretch of the executed path spent pursuing a single target.
struct Segment {
  Coord target;
  std::size_t begin = 0;  // index into the executed path
  std::size_t end = 0;    // index where the target was reached or abandoned
  bool reached = false;
  bool fresh_table = false;  // the target's heuristic table had no learned values at `begin`
};

struct SolveResult {
  Path path;
  SearchStats stats;
  std::vector<Segment> segments;
  std::size_t selections = 0;
  std::size_t fallbacks = 0;
};

/// LRTA* with dynamically selected subgoals from `db`. Heuristic tables are kept per target
/// for the duration of the problem. Throws MoveBudgetExceeded past
/// cfg.move_budget_factor * (optimal cost / 10) moves.
SolveResult solve(const GridMap& map, const SubgoalDatabase& db, const Problem& problem, const AgentConfig& cfg);

/// Plain LRTA* toward the global goal, no database.
SolveResult lrta_solve(const GridMap& map, const Problem& problem, Cost g_max = kDefaultLookahead,
                       std::uint64_t move_budget_factor = 10'000);

}  // namespace knnlrta
