#include <algorithm>
#include <functional>
#include <memory>
#include <queue>

#include "knnlrta/search.hpp"

namespace knnlrta {

Cost path_cost(const GridMap& map, const std::vector<Coord>& states) {
  Cost total = 0;
  for (std::size_t i = 1; i < states.size(); ++i) {
    const Cost c = map.edge_cost(states[i - 1], states[i]);
    if (c >= kInfiniteCost) return kInfiniteCost;
    total += c;
  }
  return total;
}

std::string path_error(const GridMap& map, const Path& path, Coord start, Coord goal) {
  auto fmt = [](Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; };
  if (path.states.empty()) return "path is empty";
  if (path.states.front() != start) return "path starts at " + fmt(path.states.front()) + ", expected " + fmt(start);
  if (path.states.back() != goal) return "path ends at " + fmt(path.states.back()) + ", expected " + fmt(goal);
  for (const auto& s : path.states) {
    if (!map.passable(s)) return "path visits blocked or out-of-bounds cell " + fmt(s);
  }
  Cost total = 0;
  for (std::size_t i = 1; i < path.states.size(); ++i) {
    const Cost c = map.edge_cost(path.states[i - 1], path.states[i]);
    if (c >= kInfiniteCost) {
      return "illegal move " + fmt(path.states[i - 1]) + " -> " + fmt(path.states[i]) + " at step " + std::to_string(i);
    }
    total += c;
  }
  if (total != path.cost) {
    return "stored cost " + std::to_string(path.cost) + " differs from re-summed cost " + std::to_string(total);
  }
  return {};
}

AStarSearch::AStarSearch(const GridMap& map) : map_(&map) { bind(map); }

void AStarSearch::bind(const GridMap& map) {
  map_ = &map;
  const auto n = map.cell_count();
  if (stamp_.size() != n) {
    stamp_.assign(n, 0);
    status_.assign(n, kUnseen);
    g_.assign(n, kInfiniteCost);
    parent_.assign(n, 0);
    generation_ = 0;
  }
}

void AStarSearch::reset(Coord start, Coord goal) {
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
  start_ = start;
  goal_ = goal;
  heap_.clear();
  seq_ = 0;
  open_count_ = 0;
  goal_expanded_ = false;
  counters_ = {};
  const StateId s = map_->id(start);
  push(s, 0, s);
}

void AStarSearch::push(StateId s, Cost g, StateId parent) {
  if (status(s) == kUnseen) {
    stamp_[s] = generation_;
    status_[s] = kOpen;
    ++open_count_;
    ++counters_.generated;
    counters_.peak_open = std::max(counters_.peak_open, open_count_);
  }
  g_[s] = g;
  parent_[s] = parent;
  heap_.push_back(Entry{g + octile_h(map_->coord(s), goal_), g, seq_++, s});
  std::push_heap(heap_.begin(), heap_.end(), Worse{});
}

void AStarSearch::drop_stale() {
  while (!heap_.empty()) {
    const Entry& top = heap_.front();
    if (status(top.id) == kOpen && g_[top.id] == top.g) return;
    std::pop_heap(heap_.begin(), heap_.end(), Worse{});
    heap_.pop_back();
  }
}

std::size_t AStarSearch::expand(std::size_t budget) {
  std::size_t done = 0;
  const StateId goal_id = map_->id(goal_);
  while (done < budget && !goal_expanded_) {
    drop_stale();
    if (heap_.empty()) break;
    const Entry top = heap_.front();
    std::pop_heap(heap_.begin(), heap_.end(), Worse{});
    heap_.pop_back();
    status_[top.id] = kClosed;
    --open_count_;
    ++counters_.expanded;
    ++counters_.closed;
    ++done;
    if (top.id == goal_id) {
      goal_expanded_ = true;
      break;
    }
    const Coord c = map_->coord(top.id);
    for (const auto& step : map_->neighbors(c)) {
      const StateId n = map_->id(step.to);
      const auto st = status(n);
      if (st == kClosed) continue;
      const Cost ng = top.g + step.cost;
      if (st == kUnseen || ng < g_[n]) push(n, ng, top.id);
    }
  }
  return done;
}

std::optional<Coord> AStarSearch::best() {
  if (goal_expanded_) return goal_;
  drop_stale();
  if (heap_.empty()) return std::nullopt;
  return map_->coord(heap_.front().id);
}

std::optional<Coord> AStarSearch::parent(Coord c) const {
  const StateId s = map_->id(c);
  if (status(s) == kUnseen || c == start_) return std::nullopt;
  return map_->coord(parent_[s]);
}

bool AStarSearch::closed(Coord c) const { return status(map_->id(c)) == kClosed; }

Cost AStarSearch::g(Coord c) const {
  const StateId s = map_->id(c);
  return status(s) == kUnseen ? kInfiniteCost : g_[s];
}

Path AStarSearch::extract_path() const {
  Path p;
  if (!goal_expanded_) return p;
  StateId s = map_->id(goal_);
  const StateId start = map_->id(start_);
  p.cost = g_[s];
  p.states.push_back(goal_);
  while (s != start) {
    s = parent_[s];
    p.states.push_back(map_->coord(s));
  }
  std::reverse(p.states.begin(), p.states.end());
  return p;
}

std::optional<Path> astar(const GridMap& map, Coord start, Coord goal, AStarCounters* counters) {
  thread_local std::unique_ptr<AStarSearch> search;
  if (!search) {
    search = std::make_unique<AStarSearch>(map);
  } else {
    search->bind(map);
  }
  search->reset(start, goal);
  search->run_to_completion();
  if (counters) *counters = search->counters();
  if (!search->goal_expanded()) return std::nullopt;
  return search->extract_path();
}

CostField dijkstra_oracle(const GridMap& map, Coord source) {
  std::vector<Cost> dist(map.cell_count(), kInfiniteCost);
  using Item = std::pair<Cost, StateId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[map.id(source)] = 0;
  queue.emplace(0, map.id(source));
  while (!queue.empty()) {
    const auto [d, s] = queue.top();
    queue.pop();
    if (d != dist[s]) continue;
    for (const auto& step : map.neighbors(map.coord(s))) {
      const StateId n = map.id(step.to);
      if (d + step.cost < dist[n]) {
        dist[n] = d + step.cost;
        queue.emplace(dist[n], n);
      }
    }
  }
  return CostField(map, std::move(dist));
}

}  // namespace knnlrta
