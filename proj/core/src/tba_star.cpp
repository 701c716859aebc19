#include "knnlrta/tba_star.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

namespace knnlrta {

void TbaConfig::validate() const {
  if (slice < 1) throw std::invalid_argument("TBA* slice must be >= 1");
  if (trace_ratio < 1) throw std::invalid_argument("TBA* trace ratio must be >= 1");
}

TbaResult tba_solve(const GridMap& map, const Problem& problem, const TbaConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();

  TbaResult out;
  const Coord start = problem.start;
  const Coord goal = problem.goal;
  Coord agent = start;
  out.path.states.push_back(agent);

  AStarSearch search(map);
  search.reset(start, goal);

  std::vector<Coord> follow;                     // principal path being followed
  std::unordered_map<Coord, std::size_t> follow_at;
  std::vector<Coord> tracing;                    // partial trace, target first
  bool trace_active = false;
  bool solution_traced = false;
  std::vector<Coord> trail{start};               // agent's own moves, for backtracking

  const Cost reference = problem.optimal_cost.value_or(octile_h(start, goal));
  const std::uint64_t budget = cfg.move_budget_factor * static_cast<std::uint64_t>(std::max<Cost>(1, reference / 10));
  std::uint64_t iterations = 0;
  Clock::duration planning{};

  while (agent != goal) {
    const auto t0 = Clock::now();
    const std::size_t generated_before = search.counters().generated;

    std::size_t expand_budget = 0;
    std::size_t trace_budget = 0;
    if (cfg.slice == kUnlimitedSlice) {
      expand_budget = trace_budget = kInf;
    } else if (!search.goal_expanded()) {
      expand_budget = (cfg.slice + 1) / 2;
      trace_budget = std::max<std::size_t>(1, (cfg.slice - expand_budget) * cfg.trace_ratio);
    } else {
      trace_budget = cfg.slice * cfg.trace_ratio;
    }

    if (!search.goal_expanded()) {
      const std::size_t done = search.expand(expand_budget);
      out.max_expansions_per_move = std::max(out.max_expansions_per_move, done);
      if (search.exhausted()) throw std::runtime_error("TBA*: goal unreachable from start");
    }

    if (!solution_traced) {
      if (!trace_active) {
        tracing.assign(1, *search.best());
        trace_active = true;
      }
      for (std::size_t steps = 0;; ++steps) {
        const Coord cur = tracing.back();
        if (cur == start || cur == agent) {
          follow.assign(tracing.rbegin(), tracing.rend());
          follow_at.clear();
          for (std::size_t i = 0; i < follow.size(); ++i) follow_at[follow[i]] = i;
          trace_active = false;
          solution_traced = follow.back() == goal;
          break;
        }
        if (steps == trace_budget) break;
        tracing.push_back(*search.parent(cur));
      }
    }

    const Coord before = agent;
    if (auto it = follow_at.find(agent); it != follow_at.end()) {
      if (it->second + 1 < follow.size()) {
        agent = follow[it->second + 1];
        trail.push_back(agent);
      }
    } else if (trail.size() > 1) {
      trail.pop_back();
      agent = trail.back();
      ++out.backtrack_moves;
    }
    if (agent != before) {
      out.path.cost += map.edge_cost(before, agent);
      out.path.states.push_back(agent);
      ++out.stats.moves;
    } else {
      ++out.wait_steps;
    }

    out.stats.max_per_move_generated =
        std::max(out.stats.max_per_move_generated, search.counters().generated - generated_before);
    planning += Clock::now() - t0;
    if (++iterations > budget) throw MoveBudgetExceeded("TBA*: move budget exhausted");
  }

  auto& st = out.stats;
  st.solution_cost = out.path.cost;
  st.optimal_cost = problem.optimal_cost.value_or(0);
  st.planning_time_per_move_us =
      iterations == 0 ? 0.0 : std::chrono::duration<double, std::micro>(planning).count() / static_cast<double>(iterations);
  st.peak_open = search.counters().peak_open;
  st.peak_closed = search.counters().closed;
  return out;
}

}  // namespace knnlrta
