#include "knnlrta/subgoal_db.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "knnlrta/rng.hpp"

namespace knnlrta {

SubgoalDatabase::SubgoalDatabase(std::int32_t width, std::int32_t height, std::vector<SubgoalRecord> records)
    : width_(width), height_(height), records_(std::move(records)) {
  index_ = build_index(records_);
  for (const auto& r : records_) stored_states_ += r.states.size();
}

SubgoalRecord compress(const GridMap& map, const Path& p) {
  if (p.states.size() < 2) throw std::invalid_argument("compress needs a path of at least two states");
  const std::size_t last = p.states.size() - 1;
  std::vector<std::size_t> chosen{0};
  while (chosen.back() != last) {
    const Coord from = p.states[chosen.back()];
    // The immediate successor on the path is always reachable.
    std::size_t candidate = chosen.back() + 1;
    std::size_t lo = candidate + 1;
    std::size_t hi = last;
    while (lo <= hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (hc_reachable(map, from, p.states[mid])) {
        candidate = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    chosen.push_back(candidate);
  }
  SubgoalRecord record;
  record.states.reserve(chosen.size());
  for (const auto i : chosen) record.states.push_back(p.states[i]);
  return record;
}

namespace {

bool ordered_subset(const std::vector<Coord>& sub, const std::vector<Coord>& path) {
  std::size_t j = 0;
  for (const auto& s : sub) {
    while (j < path.size() && path[j] != s) ++j;
    if (j == path.size()) return false;
    ++j;
  }
  return true;
}

struct BuiltRecord {
  SubgoalRecord record;
  std::size_t path_states = 0;
  std::uint64_t draws = 0;
};

BuiltRecord build_one(const GridMap& map, const BuildOptions& options, std::size_t r) {
  Rng rng = Rng::substream(options.seed, r);
  BuiltRecord out;
  while (true) {
    if (out.draws++ >= options.redraw_limit) {
      throw DatabaseBuildError("record " + std::to_string(r) + " exceeded " + std::to_string(options.redraw_limit) +
                               " draws; the map has too few suitable start/goal pairs");
    }
    const Coord start = rng.coord(map);
    const Coord goal = rng.coord(map);
    if (start == goal || !map.passable(start) || !map.passable(goal)) continue;
    const auto path = astar(map, start, goal);
    if (!path || path->states.size() < std::max<std::size_t>(options.min_len, 2)) continue;
    out.record = compress(map, *path);
    if (!ordered_subset(out.record.states, path->states)) {
      throw std::logic_error("compressed record is not an ordered subset of its source path");
    }
    out.path_states = path->states.size();
    return out;
  }
}

}  // namespace

SubgoalDatabase build_database(const GridMap& map, const BuildOptions& options, BuildSummary* summary) {
  if (options.records > 0 && map.passable_count() < 2) {
    throw std::invalid_argument("map needs at least two passable cells");
  }
  std::vector<BuiltRecord> built(options.records);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t r = next++; r < built.size(); r = next++) built[r] = build_one(map, options, r);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = built.size();
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SubgoalRecord> records;
  records.reserve(built.size());
  BuildSummary local;
  for (auto& b : built) {
    local.source_path_states += b.path_states;
    local.draws += b.draws;
    records.push_back(std::move(b.record));
  }
  if (summary) *summary = local;
  return SubgoalDatabase(map.width(), map.height(), std::move(records));
}

std::vector<ValidationIssue> validate_database(const GridMap& map, const SubgoalDatabase& db) {
  std::vector<ValidationIssue> issues;
  if (db.width() != map.width() || db.height() != map.height()) {
    issues.push_back({0, "database dimensions do not match the map"});
    return issues;
  }
  for (std::size_t r = 0; r < db.size(); ++r) {
    const auto& states = db.record(r).states;
    auto fail = [&](const std::string& msg) { issues.push_back({r, msg}); };
    if (states.size() < 2) {
      fail("record has fewer than two states");
      continue;
    }
    bool all_passable = true;
    for (const auto& s : states) all_passable = all_passable && map.passable(s);
    if (!all_passable) {
      fail("record contains a blocked or out-of-bounds state");
      continue;
    }
    if (states.front() == states.back()) fail("record start equals its end");
    Cost chain = 0;
    bool chain_ok = true;
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
      if (!hc_reachable(map, states[i], states[i + 1])) {
        fail("state " + std::to_string(i + 1) + " is not hill-climbing reachable from state " + std::to_string(i));
      }
      const auto leg = astar(map, states[i], states[i + 1]);
      if (!leg) {
        fail("no path between states " + std::to_string(i) + " and " + std::to_string(i + 1));
        chain_ok = false;
        break;
      }
      chain += leg->cost;
    }
    if (!chain_ok) continue;
    const auto whole = astar(map, states.front(), states.back());
    if (!whole || whole->cost != chain) {
      fail("states do not lie in order on an optimal path between the record ends");
    }
  }
  return issues;
}

}  // namespace knnlrta
