#include <benchmark/benchmark.h>

#include "knnlrta/kd_index.hpp"
#include "knnlrta/knn_agent.hpp"
#include "knnlrta/map_gen.hpp"
#include "knnlrta/problems.hpp"
#include "knnlrta/rng.hpp"
#include "knnlrta/search.hpp"
#include "knnlrta/subgoal_db.hpp"

using namespace knnlrta;

namespace {

const GridMap& maze(std::int32_t size) {
  static const GridMap m128 = maze_map(128, 128, MazeOptions{32, 4, 0.5}, 1);
  static const GridMap m512 = maze_map(512, 512, MazeOptions{32, 4, 0.5}, 1);
  return size == 128 ? m128 : m512;
}

const std::vector<Problem>& problems(std::int32_t size) {
  static const auto p128 = generate_problems(maze(128), 20, default_min_cost(maze(128)), 2);
  static const auto p512 = generate_problems(maze(512), 20, default_min_cost(maze(512)), 2);
  return size == 128 ? p128 : p512;
}

std::vector<SubgoalRecord> random_records(std::size_t n) {
  Rng rng(7);
  std::vector<SubgoalRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto c = [&] { return static_cast<std::int32_t>(rng.below(512)); };
    out.push_back(SubgoalRecord{{{c(), c()}, {c(), c()}}});
  }
  return out;
}

void BM_AStar(benchmark::State& state) {
  const auto size = static_cast<std::int32_t>(state.range(0));
  const auto& m = maze(size);
  const auto& ps = problems(size);
  AStarSearch search(m);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& p = ps[i++ % ps.size()];
    search.reset(p.start, p.goal);
    search.run_to_completion();
    benchmark::DoNotOptimize(search.goal_expanded());
  }
}
BENCHMARK(BM_AStar)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_SelectMove(benchmark::State& state) {
  const auto& m = maze(128);
  const auto& p = problems(128).front();
  HeuristicTable h(p.goal);
  const Cost g_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(select_move(m, p.start, h, p.goal, g_max));
}
BENCHMARK(BM_SelectMove)->Arg(14)->Arg(40)->Arg(100);

void BM_HcReachable(benchmark::State& state) {
  const auto& m = maze(512);
  const auto& ps = problems(512);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& p = ps[i++ % ps.size()];
    benchmark::DoNotOptimize(hc_reachable(m, p.start, p.goal, 250));
  }
}
BENCHMARK(BM_HcReachable);

void BM_Nearest(benchmark::State& state) {
  const auto records = random_records(static_cast<std::size_t>(state.range(0)));
  const auto idx = build_index(records);
  Rng rng(8);
  const bool scan = state.range(1) != 0;
  for (auto _ : state) {
    const Coord s{static_cast<std::int32_t>(rng.below(512)), static_cast<std::int32_t>(rng.below(512))};
    const Coord g{static_cast<std::int32_t>(rng.below(512)), static_cast<std::int32_t>(rng.below(512))};
    if (scan) benchmark::DoNotOptimize(linear_scan_nearest(records, s, g, 10));
    else benchmark::DoNotOptimize(idx.nearest(s, g, 10));
  }
  state.SetLabel(scan ? "scan" : "kd");
}
BENCHMARK(BM_Nearest)->ArgsProduct({{1000, 10000}, {0, 1}});

void BM_KnnSolve(benchmark::State& state) {
  const auto& m = maze(128);
  static const auto db = build_database(m, 1000, 3, 5);
  const auto& ps = problems(128);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, db, ps[i++ % ps.size()], AgentConfig{}));
}
BENCHMARK(BM_KnnSolve)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
