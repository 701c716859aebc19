#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "knnlrta/search.hpp"

namespace knnlrta {
namespace {

// The one move-selection rule shared by LRTA* (at g_max = 14) and hill climbing:
// lowest g + h, ties to higher g, then to the earlier direction in N..NW order.
struct SuccessorChoice {
  const Step* best = nullptr;
  Cost f = kInfiniteCost;
  Cost min_h = kInfiniteCost;
};

SuccessorChoice choose_successor(const Neighbors& succ, const HeuristicTable& h) {
  SuccessorChoice out;
  for (const auto& step : succ) {
    const Cost hv = h(step.to);
    const Cost f = step.cost + hv;
    out.min_h = std::min(out.min_h, hv);
    if (!out.best || f < out.f || (f == out.f && step.cost > out.best->cost)) {
      out.best = &step;
      out.f = f;
    }
  }
  return out;
}

MoveChoice select_among_neighbors(const GridMap& map, Coord s, const HeuristicTable& h) {
  const auto succ = map.neighbors(s);
  const auto choice = choose_successor(succ, h);
  if (!choice.best) throw DeadEndError("state has no successors");
  return MoveChoice{choice.best->to, choice.best->to, choice.f, choice.best->cost, succ.size(), 1};
}

// General cost-limited lookahead: uniform-cost expansion up to g_max with duplicate detection.
MoveChoice select_with_lookahead(const GridMap& map, Coord s, const HeuristicTable& h, Cost g_max) {
  struct Node {
    Cost g;
    Coord first_step;
    std::size_t order;
    bool settled = false;
  };
  std::unordered_map<Coord, Node> nodes;
  std::vector<Coord> discovered;
  using Item = std::pair<Cost, std::size_t>;  // (g, discovery order)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

  nodes.emplace(s, Node{0, s, 0});
  discovered.push_back(s);
  queue.emplace(0, 0);
  std::vector<Coord> frontier;
  std::vector<Coord> settled;
  while (!queue.empty()) {
    const auto [g, order] = queue.top();
    queue.pop();
    const Coord c = discovered[order];
    Node& node = nodes.at(c);
    if (node.settled || node.g != g) continue;
    node.settled = true;
    bool on_frontier = false;
    for (const auto& step : map.neighbors(c)) {
      const Cost ng = g + step.cost;
      if (ng > g_max) {
        on_frontier = true;
        continue;
      }
      auto it = nodes.find(step.to);
      const Coord first = c == s ? step.to : node.first_step;
      if (it == nodes.end()) {
        nodes.emplace(step.to, Node{ng, first, discovered.size()});
        queue.emplace(ng, discovered.size());
        discovered.push_back(step.to);
      } else if (!it->second.settled && ng < it->second.g) {
        it->second.g = ng;
        it->second.first_step = first;
        queue.emplace(ng, it->second.order);
      }
    }
    if (c == s) continue;
    settled.push_back(c);
    if (on_frontier || c == h.goal()) frontier.push_back(c);
  }
  if (settled.empty()) throw DeadEndError("state has no successors");
  if (frontier.empty()) frontier = settled;

  const Coord* best = nullptr;
  Cost best_f = kInfiniteCost;
  Cost best_g = 0;
  std::size_t best_order = 0;
  for (const auto& c : frontier) {
    const Node& n = nodes.at(c);
    const Cost f = n.g + h(c);
    if (!best || f < best_f || (f == best_f && (n.g > best_g || (n.g == best_g && n.order < best_order)))) {
      best = &c;
      best_f = f;
      best_g = n.g;
      best_order = n.order;
    }
  }
  return MoveChoice{nodes.at(*best).first_step, *best, best_f, best_g, discovered.size() - 1, settled.size() + 1};
}

}  // namespace

bool HeuristicTable::raise(Coord s, Cost value) {
  if (value <= (*this)(s)) return false;
  overrides_[s] = value;
  return true;
}

MoveChoice select_move(const GridMap& map, Coord s, const HeuristicTable& h, Coord goal, Cost g_max) {
  assert(goal == h.goal());
  (void)goal;
  if (g_max >= kDiagonalCost && g_max < 2 * kCardinalCost) return select_among_neighbors(map, s, h);
  return select_with_lookahead(map, s, h, g_max);
}

Coord lrta_step(const GridMap& map, Coord s, HeuristicTable& h, Coord goal, Cost g_max, MoveCounters* counters) {
  const MoveChoice choice = select_move(map, s, h, goal, g_max);
  const bool raised = h.raise(s, choice.f_value);
  if (counters) {
    counters->generated += choice.generated;
    counters->expanded += choice.expanded;
    counters->h_raises += raised ? 1 : 0;
  }
  return choice.next_state;
}

HillClimbResult hill_climb(const GridMap& map, Coord a, Coord b, std::size_t step_cap, const HeuristicTable* h,
                           bool record_trace) {
  const HeuristicTable fallback(b);
  const HeuristicTable& table = h ? *h : fallback;
  assert(table.goal() == b);

  HillClimbResult out;
  if (record_trace) out.trace.push_back(a);
  const bool uncapped = step_cap == kUnlimitedSteps;
  std::unordered_set<Coord> seen;
  if (uncapped) seen.insert(a);

  Coord s = a;
  while (s != b) {
    if (out.steps >= step_cap) return out;
    const auto succ = map.neighbors(s);
    out.generated += succ.size();
    const auto choice = choose_successor(succ, table);
    if (!choice.best || table(s) <= choice.min_h) return out;
    s = choice.best->to;
    out.cost += choice.best->cost;
    ++out.steps;
    if (record_trace) out.trace.push_back(s);
    if (uncapped && !seen.insert(s).second) return out;
  }
  out.reached = true;
  return out;
}

bool hc_reachable(const GridMap& map, Coord a, Coord b, std::size_t step_cap, const HeuristicTable* h,
                  std::size_t* generated) {
  const auto r = hill_climb(map, a, b, step_cap, h, false);
  if (generated) *generated += r.generated;
  return r.reached;
}

}  // namespace knnlrta
