#include "knnlrta/knn_agent.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <unordered_map>

namespace knnlrta {

void AgentConfig::validate() const {
  if (m < 1) throw std::invalid_argument("M must be >= 1");
  if (hc_cap < 1) throw std::invalid_argument("hc_cap must be >= 1");
  if (!(quota_mult > 1.0)) throw std::invalid_argument("quota multiplier must be > 1");
  if (g_max < kCardinalCost) throw std::invalid_argument("g_max must be >= 10");
}

Cost similarity(Coord s, Coord goal, const SubgoalRecord& record) {
  return endpoint_similarity(s, goal, record.start(), record.end());
}

SubgoalPlan select_record(const GridMap& map, Coord s, Coord goal, const SubgoalDatabase& db, const AgentConfig& cfg,
                          SelectionCounters* counters) {
  SelectionCounters local;
  SelectionCounters& c = counters ? *counters : local;
  auto reachable = [&](Coord a, Coord b) {
    ++c.reach_checks;
    return hc_reachable(map, a, b, cfg.hc_cap, nullptr, &c.generated);
  };

  SubgoalPlan plan;
  plan.targets = {goal};
  if (reachable(s, goal)) {
    plan.source = SubgoalPlan::Source::DirectGoal;
    return plan;
  }
  if (db.empty()) return plan;

  const auto candidates = cfg.use_kd_index ? db.index().nearest(s, goal, cfg.m)
                                           : linear_scan_nearest(db.records(), s, goal, cfg.m);
  for (const auto& cand : candidates) {
    ++c.candidates;
    const auto& rec = db.record(cand.record);
    if (!reachable(s, rec.start()) || !reachable(rec.end(), goal)) continue;

    const std::size_t k = rec.states.size();
    const std::size_t begin = reachable(s, rec.states[1]) ? 1 : 0;
    plan.targets.assign(rec.states.begin() + static_cast<std::ptrdiff_t>(begin), rec.states.end());
    if (plan.targets.back() != goal) plan.targets.push_back(goal);
    plan.source = SubgoalPlan::Source::Record;
    plan.record = cand.record;
    // Only meaningful when the record's end is a separate target ahead of the goal.
    if (k >= 2 && begin <= k - 2 && rec.end() != goal) plan.shortcut_at = k - 2 - begin;
    return plan;
  }
  return plan;
}

namespace {

class Agent {
 public:
  Agent(const GridMap& map, const SubgoalDatabase* db, const Problem& problem, const AgentConfig& cfg,
        bool use_selection)
      : map_(map), db_(db), problem_(problem), cfg_(cfg), use_selection_(use_selection) {}

  SolveResult run() {
    using Clock = std::chrono::steady_clock;
    const Coord goal = problem_.goal;
    s_ = problem_.start;
    result_.path.states.push_back(s_);

    const Cost reference = problem_.optimal_cost.value_or(octile_h(problem_.start, goal));
    const std::uint64_t budget = cfg_.move_budget_factor * static_cast<std::uint64_t>(std::max<Cost>(1, reference / 10));

    Clock::duration planning{};
    bool first = true;
    while (s_ != goal) {
      const auto t0 = Clock::now();
      generated_this_move_ = 0;
      direct_checked_ = false;

      if (first) {
        first = false;
        if (use_selection_) {
          select();
        } else {
          plan_.targets = {goal};
          plan_.source = SubgoalPlan::Source::DirectGoal;
        }
      } else if (quota_active_ && quota_spent_ >= quota_limit_) {
        select();
      }
      advance_reached_targets();

      const Coord target = plan_.targets[target_index_];
      if (!segment_open_ || result_.segments.back().target != target) open_segment(target);
      auto& table = tables_.try_emplace(target, target).first->second;
      MoveCounters mc;
      const Coord next = lrta_step(map_, s_, table, target, cfg_.g_max, &mc);
      generated_this_move_ += mc.generated;
      peak_open_ = std::max(peak_open_, mc.generated);
      peak_closed_ = std::max(peak_closed_, mc.expanded);

      const Cost edge = map_.edge_cost(s_, next);
      result_.path.cost += edge;
      quota_spent_ += edge;
      s_ = next;
      result_.path.states.push_back(s_);
      ++result_.stats.moves;
      if (s_ == target) close_segment(true);

      result_.stats.max_per_move_generated = std::max(result_.stats.max_per_move_generated, generated_this_move_);
      planning += Clock::now() - t0;
      if (result_.stats.moves > budget) {
        throw MoveBudgetExceeded("move budget of " + std::to_string(budget) + " moves exhausted at (" +
                                 std::to_string(s_.x) + "," + std::to_string(s_.y) + ")");
      }
    }
    if (segment_open_) close_segment(true);

    auto& st = result_.stats;
    st.solution_cost = result_.path.cost;
    st.optimal_cost = problem_.optimal_cost.value_or(0);
    st.planning_time_per_move_us =
        st.moves == 0 ? 0.0 : std::chrono::duration<double, std::micro>(planning).count() / static_cast<double>(st.moves);
    st.peak_open = peak_open_;
    st.peak_closed = peak_closed_;
    for (const auto& [_, table] : tables_) st.updated_h_states += table.updated_count();
    st.db_states = db_ ? db_->stored_states() : 0;
    return std::move(result_);
  }

 private:
  void select() {
    SelectionCounters sc;
    SubgoalPlan next = select_record(map_, s_, problem_.goal, *db_, cfg_, &sc);
    generated_this_move_ += sc.generated;
    direct_checked_ = true;  // select_record always starts with the direct check from s_
    ++result_.selections;
    if (next.source == SubgoalPlan::Source::Fallback) {
      ++result_.fallbacks;
      ++fallback_streak_;
      if (fallback_streak_ == 1) {
        quota_active_ = true;
        quota_limit_ = cfg_.quota_mult * static_cast<double>(octile_h(s_, problem_.goal));
        quota_spent_ = 0;
      } else {
        quota_active_ = false;  // second failure in a row: no further interruptions
      }
    } else {
      fallback_streak_ = 0;
      quota_active_ = false;
    }
    plan_ = std::move(next);
    target_index_ = 0;
  }

  void advance_reached_targets() {
    const std::size_t last = plan_.targets.size() - 1;
    while (target_index_ < last && plan_.targets[target_index_] == s_) {
      if (plan_.shortcut_at && target_index_ == *plan_.shortcut_at && shortcut_to_goal()) {
        target_index_ = last;
      } else {
        ++target_index_;
      }
    }
  }

  bool shortcut_to_goal() {
    // The direct check from this very state already failed during selection in this move.
    if (direct_checked_) return false;
    std::size_t gen = 0;
    const bool ok = hc_reachable(map_, s_, problem_.goal, cfg_.hc_cap, nullptr, &gen);
    generated_this_move_ += gen;
    return ok;
  }

  void open_segment(Coord target) {
    if (segment_open_) close_segment(false);
    const auto it = tables_.find(target);
    Segment seg;
    seg.target = target;
    seg.begin = result_.path.states.size() - 1;
    seg.fresh_table = it == tables_.end() || it->second.updated_count() == 0;
    result_.segments.push_back(seg);
    segment_open_ = true;
  }

  void close_segment(bool reached) {
    auto& seg = result_.segments.back();
    seg.end = result_.path.states.size() - 1;
    seg.reached = reached && s_ == seg.target;
    segment_open_ = false;
  }

  const GridMap& map_;
  const SubgoalDatabase* db_;
  const Problem& problem_;
  const AgentConfig& cfg_;
  bool use_selection_;

  Coord s_{};
  SubgoalPlan plan_;
  std::size_t target_index_ = 0;
  std::unordered_map<Coord, HeuristicTable> tables_;
  SolveResult result_;

  bool quota_active_ = false;
  double quota_limit_ = 0;
  double quota_spent_ = 0;
  int fallback_streak_ = 0;

  std::size_t generated_this_move_ = 0;
  bool direct_checked_ = false;
  bool segment_open_ = false;
  std::size_t peak_open_ = 0;
  std::size_t peak_closed_ = 0;
};

}  // namespace

SolveResult solve(const GridMap& map, const SubgoalDatabase& db, const Problem& problem, const AgentConfig& cfg) {
  cfg.validate();
  return Agent(map, &db, problem, cfg, true).run();
}

SolveResult lrta_solve(const GridMap& map, const Problem& problem, Cost g_max, std::uint64_t move_budget_factor) {
  AgentConfig cfg;
  cfg.g_max = g_max;
  cfg.move_budget_factor = move_budget_factor;
  cfg.validate();
  return Agent(map, nullptr, problem, cfg, false).run();
}

}  // namespace knnlrta
