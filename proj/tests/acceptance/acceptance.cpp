// Acceptance suite. Prints one PASS/FAIL line per criterion followed by its evidence.
//
//   acceptance [--only 1,2,...] [--expect-fail 7,...]
//
// Exit status is 0 when the set of failing criteria equals the --expect-fail set (empty by
// default), 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knnlrta/bench.hpp"
#include "knnlrta/io.hpp"
#include "knnlrta/kd_index.hpp"
#include "knnlrta/knn_agent.hpp"
#include "knnlrta/map_gen.hpp"
#include "knnlrta/problems.hpp"
#include "knnlrta/rng.hpp"
#include "knnlrta/search.hpp"
#include "knnlrta/subgoal_db.hpp"
#include "knnlrta/tba_star.hpp"
#include "oracles.hpp"
#include "witness.hpp"

using namespace knnlrta;

namespace {

// Pinned parameters and tolerances.
constexpr double kOracleSeconds = 60.0;
constexpr double kCompressionSeconds = 300.0;
constexpr double kTrendSeconds = 1800.0;
constexpr double kTrendTargetPct = 50.0;
constexpr double kTrendSeSlack = 1.0;  // standard errors allowed above the running minimum
constexpr std::size_t kLargeProblems = 100;
constexpr std::uint64_t kLargeMapSeed = 1;
constexpr std::uint64_t kLargeProblemSeed = 3;
constexpr std::uint64_t kLargeDbSeed = 5;
// Room-and-corridor maze used for the 512x512 runs and their 128x128 counterpart.
const MazeOptions kRoomMaze{32, 4, 0.5};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  violated: " << what << '\n';
    }
  }
};

SubgoalDatabase prefix(const SubgoalDatabase& db, std::size_t n) {
  return SubgoalDatabase(db.width(), db.height(), {db.records().begin(), db.records().begin() + static_cast<std::ptrdiff_t>(n)});
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Shared 512x512 setup for criteria 6, 7 and 9.
struct LargeRun {
  GridMap map = empty_map(1, 1);
  std::vector<Problem> problems;
  SubgoalDatabase full;  // 5000 records; smaller N are prefixes
  double build_seconds = 0;
};

LargeRun& large_run() {
  static LargeRun run = [] {
    LargeRun r;
    r.map = maze_map(512, 512, kRoomMaze, kLargeMapSeed);
    r.problems = generate_problems(r.map, kLargeProblems, default_min_cost(r.map), kLargeProblemSeed);
    const auto t0 = Clock::now();
    r.full = build_database(r.map, BuildOptions{5000, 3, kLargeDbSeed, 0});
    r.build_seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

struct KnnSweep {
  std::size_t n = 0;
  std::size_t solved = 0;
  std::size_t budget_hits = 0;
  std::size_t invalid = 0;
  std::size_t max_generated = 0;
  double mean_pct = 0;
  double se_pct = 0;
};

KnnSweep run_knn(const GridMap& map, const std::vector<Problem>& problems, const SubgoalDatabase& db) {
  KnnSweep s;
  s.n = db.size();
  std::vector<double> subs;
  for (const auto& p : problems) {
    try {
      const auto r = solve(map, db, p, AgentConfig{});
      if (!oracle::check_path(map, r.path, p.start, p.goal).empty()) {
        ++s.invalid;
        continue;
      }
      ++s.solved;
      s.max_generated = std::max(s.max_generated, r.stats.max_per_move_generated);
      subs.push_back(suboptimality(r.path.cost, *p.optimal_cost).percent());
    } catch (const MoveBudgetExceeded&) {
      ++s.budget_hits;
    }
  }
  if (!subs.empty()) {
    double sum = 0;
    for (double v : subs) sum += v;
    s.mean_pct = sum / static_cast<double>(subs.size());
    double var = 0;
    for (double v : subs) var += (v - s.mean_pct) * (v - s.mean_pct);
    if (subs.size() > 1) var /= static_cast<double>(subs.size() - 1);
    s.se_pct = std::sqrt(var / static_cast<double>(subs.size()));
  }
  return s;
}

double g_sweep_seconds = 0;

std::vector<KnnSweep>& large_sweeps() {
  static std::vector<KnnSweep> sweeps = [] {
    auto& run = large_run();
    const auto t0 = Clock::now();
    std::vector<KnnSweep> out;
    for (std::size_t n : {0, 200, 1000, 4000, 5000}) out.push_back(run_knn(run.map, run.problems, prefix(run.full, n)));
    g_sweep_seconds = seconds_since(t0);
    return out;
  }();
  return sweeps;
}

const KnnSweep& sweep_for(std::size_t n) {
  for (const auto& s : large_sweeps())
    if (s.n == n) return s;
  throw std::logic_error("no sweep for N");
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& o) {
  const auto t0 = Clock::now();
  const std::vector<GridMap> maps{random_obstacle_map(128, 128, 0.3, 101), maze_map(128, 128, MazeOptions{}, 102),
                                  maze_map(128, 128, kRoomMaze, 103)};
  std::size_t checked = 0, mismatches = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (const auto& p : generate_problems(maps[i], 70, default_min_cost(maps[i]), 110 + i)) {
      const auto a = astar(maps[i], p.start, p.goal);
      const Cost want = dijkstra_oracle(maps[i], p.start).at(p.goal);
      ++checked;
      if (!a || a->cost != want || !oracle::check_path(maps[i], *a, p.start, p.goal).empty()) ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  o.detail << "  " << checked << " problems on 3 maps, " << mismatches << " mismatches, " << pct(secs) << " s\n";
  o.require(checked >= 200, "at least 200 problems");
  o.require(mismatches == 0, "A* cost equals the Dijkstra oracle");
  o.require(secs < kOracleSeconds, "runtime under 60 s");
}

void criterion_2(Outcome& o) {
  const std::vector<GridMap> maps{random_obstacle_map(128, 128, 0.25, 201), maze_map(128, 128, MazeOptions{3, 1, 0.2}, 202)};
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& m = maps[i];
    const auto cells = oracle::passable_cells(m);
    Rng rng(210 + i);
    std::size_t found = 0, violations = 0;
    constexpr std::int32_t radius = 32;
    while (found < 1000) {
      const Coord a = cells[rng.below(cells.size())];
      const Coord b{a.x + static_cast<std::int32_t>(rng.below(2 * radius + 1)) - radius,
                    a.y + static_cast<std::int32_t>(rng.below(2 * radius + 1)) - radius};
      if (!m.passable(b) || a == b) continue;
      const auto hc = hill_climb(m, a, b, kUnlimitedSteps, nullptr, true);
      if (!hc.reached) continue;
      ++found;
      HeuristicTable h(b);
      std::vector<Coord> walk{a};
      while (walk.back() != b && walk.size() <= hc.trace.size()) walk.push_back(lrta_step(m, walk.back(), h, b, 14));
      if (walk != hc.trace || oracle::has_repeat(walk, 0, walk.size())) ++violations;
    }
    o.detail << "  map " << i + 1 << ": " << found << " climbable pairs, " << violations << " violations\n";
    o.require(violations == 0, "LRTA* retraces the hill-climbing trace without revisits");
  }
}

void criterion_3(Outcome& o) {
  const auto m = map_from_rows(witness::kRows);
  const auto hc = hill_climb(m, witness::kStart, witness::kGoal, kUnlimitedSteps, nullptr, true);
  const auto opt = astar(m, witness::kStart, witness::kGoal);
  o.require(hc.reached && opt.has_value(), "climb reaches the goal and a path exists");
  if (!hc.reached || !opt) return;
  o.detail << "  climb cost " << hc.cost << ", optimal " << opt->cost << ", suboptimality "
           << suboptimality(hc.cost, opt->cost).to_string() << "%\n";
  o.require(hc.cost > opt->cost, "climb cost strictly above optimal");
  o.require(path_cost(m, hc.trace) == hc.cost, "trace cost matches");
}

void criterion_4(Outcome& o) {
  const auto t0 = Clock::now();
  for (std::uint64_t seed : {401, 402}) {
    const auto m = maze_map(128, 128, MazeOptions{}, seed);
    const auto db = build_database(m, BuildOptions{500, 3, seed, 0});
    const auto issues = validate_database(m, db);
    o.detail << "  maze " << seed << ": " << db.size() << " records, " << db.stored_states() << " stored states, "
             << issues.size() << " issues\n";
    o.require(db.size() == 500 && issues.empty(), "every record validates");
  }
  const double secs = seconds_since(t0);
  o.detail << "  " << pct(secs) << " s\n";
  o.require(secs < kCompressionSeconds, "runtime under 5 minutes");
}

void criterion_5(Outcome& o) {
  Rng rng(501);
  std::vector<SubgoalRecord> records;
  for (int i = 0; i < 1000; ++i) {
    std::array<std::int32_t, 4> v;
    for (auto& x : v) x = static_cast<std::int32_t>(rng.below(512));
    records.push_back(SubgoalRecord{{{v[0], v[1]}, {v[2], v[3]}}});
  }
  const auto idx = build_index(records);
  std::size_t differ = 0;
  for (int q = 0; q < 10'000; ++q) {
    const Coord s{static_cast<std::int32_t>(rng.below(512)), static_cast<std::int32_t>(rng.below(512))};
    const Coord g{static_cast<std::int32_t>(rng.below(512)), static_cast<std::int32_t>(rng.below(512))};
    const std::size_t m = 1 + rng.below(20);
    const auto got = idx.nearest(s, g, m);
    if (got != linear_scan_nearest(records, s, g, m) || got != oracle::nearest(records, s, g, m)) ++differ;
  }
  o.detail << "  10000 queries over 1000 records, " << differ << " differ from the scan\n";
  o.require(differ == 0, "kd-index matches the linear scan");

  const auto map = maze_map(128, 128, kRoomMaze, 502);
  const auto db = build_database(map, BuildOptions{1000, 3, 503, 0});
  AgentConfig scan;
  scan.use_kd_index = false;
  std::size_t path_diffs = 0;
  const auto problems = generate_problems(map, 50, default_min_cost(map), 504);
  for (const auto& p : problems) {
    const auto a = solve(map, db, p, AgentConfig{});
    const auto b = solve(map, db, p, scan);
    if (a.path != b.path || !a.stats.same_counters(b.stats)) ++path_diffs;
  }
  o.detail << "  " << problems.size() << " kNN LRTA* runs, " << path_diffs << " differ between kd-index and scan\n";
  o.require(path_diffs == 0, "identical paths under both candidate stages");
}

void criterion_6(Outcome& o) {
  auto& run = large_run();
  o.detail << "  512x512 maze, " << run.problems.size() << " problems, database build " << pct(run.build_seconds)
           << " s\n";
  for (std::size_t n : {0, 200, 1000, 4000}) {
    const auto& s = sweep_for(n);
    o.detail << "  N=" << n << ": solved " << s.solved << ", invalid " << s.invalid << ", budget " << s.budget_hits
             << ", mean suboptimality " << pct(s.mean_pct) << "%\n";
    o.require(s.solved == run.problems.size() && s.invalid == 0 && s.budget_hits == 0,
              "N=" + std::to_string(n) + " solves everything");
  }
}

void criterion_7(Outcome& o) {
  const AgentConfig cfg;
  const std::size_t bound = 8 + (2 * cfg.m + 2) * cfg.hc_cap * 8;
  const auto small = maze_map(128, 128, kRoomMaze, kLargeMapSeed);
  const auto small_problems = generate_problems(small, kLargeProblems, default_min_cost(small), kLargeProblemSeed);
  const auto small_db = build_database(small, BuildOptions{4000, 3, kLargeDbSeed, 0});
  std::size_t max_small = 0, max_large = 0;
  for (std::size_t n : {0, 200, 1000, 4000}) {
    const auto s = run_knn(small, small_problems, prefix(small_db, n));
    const auto& l = sweep_for(n);
    o.detail << "  N=" << n << ": 128x128 max " << s.max_generated << ", 512x512 max " << l.max_generated << '\n';
    max_small = std::max(max_small, s.max_generated);
    max_large = std::max(max_large, l.max_generated);
  }
  o.detail << "  bound 8+(2M+2)*hc_cap*8 = " << bound << '\n';
  o.require(max_small <= bound && max_large <= bound, "both maxima within the constant bound");
  o.require(max_large <= max_small, "512x512 maximum does not exceed the 128x128 maximum");
}

void criterion_8(Outcome& o) {
  const auto m = maze_map(128, 128, MazeOptions{}, 801);
  const auto problems = generate_problems(m, 100, default_min_cost(m), 802);
  std::size_t cost_mismatch = 0;
  for (const auto& p : problems) {
    const auto r = tba_solve(m, p, TbaConfig{});
    if (r.path.cost != *p.optimal_cost || !oracle::check_path(m, r.path, p.start, p.goal).empty()) ++cost_mismatch;
  }
  o.detail << "  unlimited slice: " << cost_mismatch << " of " << problems.size() << " differ from A*\n";
  o.require(cost_mismatch == 0, "unlimited slice reproduces the A* cost");
  for (std::size_t slice : {5, 50, 500}) {
    TbaConfig cfg;
    cfg.slice = slice;
    std::size_t solved = 0;
    double sum = 0;
    for (const auto& p : problems) {
      try {
        const auto r = tba_solve(m, p, cfg);
        if (oracle::check_path(m, r.path, p.start, p.goal).empty()) ++solved;
        sum += suboptimality(r.path.cost, *p.optimal_cost).percent();
      } catch (const std::exception&) {
      }
    }
    o.detail << "  slice " << slice << ": solved " << solved << ", mean suboptimality "
             << pct(sum / static_cast<double>(problems.size())) << "%\n";
    o.require(solved == problems.size(), "slice " + std::to_string(slice) + " solves everything");
  }
}

void criterion_9(Outcome& o) {
  auto& run = large_run();
  double running_min = 0;
  bool first = true;
  for (std::size_t n : {200, 1000, 5000}) {
    const auto& s = sweep_for(n);
    o.detail << "  N=" << n << ": mean " << pct(s.mean_pct) << "% (se " << pct(s.se_pct) << "), solved " << s.solved
             << '\n';
    o.require(s.solved == run.problems.size(), "N=" + std::to_string(n) + " solves everything");
    if (!first) o.require(s.mean_pct <= running_min + kTrendSeSlack * s.se_pct, "N=" + std::to_string(n) + " within 1 se of monotone");
    running_min = first ? s.mean_pct : std::min(running_min, s.mean_pct);
    first = false;
  }
  o.require(sweep_for(5000).mean_pct <= kTrendTargetPct, "mean suboptimality at N=5000 at most 50%");
  const double secs = run.build_seconds + g_sweep_seconds;
  o.detail << "  " << pct(secs) << " s including the build and every N\n";
  o.require(secs < kTrendSeconds, "runtime under 30 minutes");
}

void criterion_10(Outcome& o) {
  const auto m = maze_map(128, 128, MazeOptions{}, 1001);
  const auto a = serialize_database(build_database(m, BuildOptions{500, 3, 1002, 1}));
  const auto b = serialize_database(build_database(m, BuildOptions{500, 3, 1002, 1}));
  const auto c = serialize_database(build_database(m, BuildOptions{500, 3, 1002, 4}));
  const auto d = serialize_database(build_database(m, BuildOptions{500, 3, 1002, 0}));
  o.detail << "  database of " << a.size() << " bytes\n";
  o.require(a == b, "byte-identical across runs");
  o.require(a == c && a == d, "byte-identical across thread counts");

  const auto db = deserialize_database(a, m);
  const std::string path = "acceptance_roundtrip.db";
  save_database_file(db, path);
  const auto loaded = load_database_file(path, m);
  std::remove(path.c_str());
  std::size_t differ = 0;
  const auto problems = generate_problems(m, 30, default_min_cost(m), 1003);
  for (const auto& p : problems) {
    const auto x = solve(m, db, p, AgentConfig{});
    const auto y = solve(m, loaded, p, AgentConfig{});
    if (x.path != y.path || !x.stats.same_counters(y.stats)) ++differ;
  }
  o.detail << "  " << problems.size() << " solves after save/load, " << differ << " differ\n";
  o.require(loaded == db && differ == 0, "save, load and solve reproduce paths and counters");
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, expect_fail;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--only") only = parse_list(argv[i + 1]);
    else if (flag == "--expect-fail") expect_fail = parse_list(argv[i + 1]);
    else {
      std::cerr << "unknown flag " << flag << '\n';
      return 2;
    }
  }

  using Fn = void (*)(Outcome&);
  const std::vector<std::pair<const char*, Fn>> criteria{
      {"A* matches the Dijkstra oracle", criterion_1},
      {"LRTA* retraces hill-climbing traces", criterion_2},
      {"climbable but suboptimal witness", criterion_3},
      {"compressed databases validate", criterion_4},
      {"kd-index equals linear scan", criterion_5},
      {"completeness on a 512x512 maze", criterion_6},
      {"real-time per-move bound", criterion_7},
      {"TBA* unlimited slice equals A*", criterion_8},
      {"suboptimality trend over N", criterion_9},
      {"determinism and serialization", criterion_10},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "  exception: " << e.what() << '\n';
    }
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << " ("
              << pct(seconds_since(t0)) << " s)\n"
              << o.detail.str() << std::flush;
  }
  if (failed != expect_fail) {
    std::cout << "unexpected outcome: failing set differs from --expect-fail\n";
    return 1;
  }
  return 0;
}
