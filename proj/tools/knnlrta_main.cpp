// knnlrta: database tooling, problem generation, solving and benchmarking on octile grid maps.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>

#include "knnlrta/bench.hpp"
#include "knnlrta/io.hpp"
#include "knnlrta/knn_agent.hpp"
#include "knnlrta/map_gen.hpp"
#include "knnlrta/problems.hpp"
#include "knnlrta/subgoal_db.hpp"
#include "knnlrta/tba_star.hpp"

using namespace knnlrta;
using json = nlohmann::json;

namespace {

std::size_t parse_slice(const std::string& s) {
  if (s == "unlimited" || s == "inf") return kUnlimitedSlice;
  return static_cast<std::size_t>(std::stoull(s));
}

std::string slice_label(std::size_t slice) { return slice == kUnlimitedSlice ? "unlimited" : std::to_string(slice); }

int cmd_build_db(const std::string& map_path, std::size_t records, std::uint64_t seed, std::size_t min_len,
                 unsigned threads, const std::string& out) {
  const auto map = load_map_file(map_path);
  BuildSummary summary;
  const auto t0 = std::chrono::steady_clock::now();
  const auto db = build_database(map, BuildOptions{records, min_len, seed, threads}, &summary);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  save_database_file(db, out);
  std::cout << "built " << db.size() << " records (" << db.stored_states() << " stored states from "
            << summary.source_path_states << " path states) in " << std::fixed << std::setprecision(2) << secs
            << " s -> " << out << '\n';
  return 0;
}

int cmd_validate_db(const std::string& map_path, const std::string& db_path) {
  const auto map = load_map_file(map_path);
  const auto db = load_database_file(db_path, map);
  const auto issues = validate_database(map, db);
  for (const auto& issue : issues) std::cerr << "record " << issue.record << ": " << issue.message << '\n';
  std::size_t subgoals = 0;
  for (const auto& r : db.records()) subgoals += r.subgoal_count();
  std::cout << db.size() << " records, " << subgoals << " subgoals, " << issues.size() << " issues\n";
  return issues.empty() ? 0 : 1;
}

int cmd_gen_problems(const std::string& map_path, std::size_t count, std::optional<Cost> min_cost, std::uint64_t seed,
                     const std::string& out) {
  const auto map = load_map_file(map_path);
  const auto problems = generate_problems(map, count, min_cost.value_or(default_min_cost(map)), seed);
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  write_scenario(f, problems);
  std::cout << "wrote " << problems.size() << " problems to " << out << '\n';
  return 0;
}

int cmd_gen_map(const std::string& kind, std::int32_t width, std::int32_t height, std::uint64_t seed, double density,
                const MazeOptions& maze, const std::string& out) {
  GridMap map;
  if (kind == "empty") {
    map = empty_map(width, height);
  } else if (kind == "random") {
    map = random_obstacle_map(width, height, density, seed);
  } else if (kind == "maze") {
    map = maze_map(width, height, maze, seed);
  } else {
    throw std::invalid_argument("unknown map kind '" + kind + "'");
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  write_map(f, map);
  std::cout << "wrote " << width << "x" << height << " " << kind << " map (" << map.passable_count()
            << " passable cells) to " << out << '\n';
  return 0;
}

AlgorithmSpec spec_from_flags(const std::string& algo, const std::string& db_path, const GridMap& map,
                              const AgentConfig& knn, const TbaConfig& tba) {
  AlgorithmSpec spec;
  spec.algorithm = parse_algorithm(algo);
  spec.knn = knn;
  spec.tba = tba;
  if (spec.algorithm == Algorithm::Knn) {
    spec.db = db_path.empty() ? std::make_shared<SubgoalDatabase>(map.width(), map.height(), std::vector<SubgoalRecord>{})
                              : std::make_shared<SubgoalDatabase>(load_database_file(db_path, map));
    spec.param = "N=" + std::to_string(spec.db->size());
  } else if (spec.algorithm == Algorithm::Tba) {
    spec.param = "slice=" + slice_label(tba.slice);
  }
  return spec;
}

int cmd_solve(const std::string& map_path, const std::string& problems_path, const AlgorithmSpec& proto,
              const std::string& db_path, const std::string& csv_out) {
  const auto map = load_map_file(map_path);
  auto problems = load_scenario_file(problems_path);
  const auto spec = spec_from_flags(algorithm_name(proto.algorithm), db_path, map, proto.knn, proto.tba);
  std::vector<BenchRow> rows;
  std::cout << "problem       cost    optimal   subopt%    moves   us/move\n";
  for (std::size_t i = 0; i < problems.size(); ++i) {
    auto& p = problems[i];
    if (!p.optimal_cost) {
      const auto path = astar(map, p.start, p.goal);
      if (!path) throw std::runtime_error("problem " + std::to_string(i) + " is unsolvable");
      p.optimal_cost = path->cost;
    }
    auto r = run_one(map, p, spec);
    if (const auto err = path_error(map, r.path, p.start, p.goal); !err.empty()) {
      throw std::runtime_error("invalid path on problem " + std::to_string(i) + ": " + err);
    }
    r.stats.optimal_cost = *p.optimal_cost;
    std::cout << std::setw(7) << i << std::setw(11) << r.stats.solution_cost << std::setw(11) << r.stats.optimal_cost
              << std::setw(10) << suboptimality(r.stats.solution_cost, r.stats.optimal_cost).to_string() << std::setw(9)
              << r.stats.moves << std::setw(10) << std::fixed << std::setprecision(2)
              << r.stats.planning_time_per_move_us << '\n';
    std::cout.unsetf(std::ios::fixed);
    rows.push_back(BenchRow{algorithm_name(spec.algorithm), spec.param, i, r.stats});
  }
  BenchReport report{rows, aggregate(rows)};
  print_summary(std::cout, report);
  if (!csv_out.empty()) {
    std::ofstream f(csv_out);
    write_report_csv(f, report);
  }
  return 0;
}

// Bench spec file:
// {
//   "threads": 1,
//   "algorithms": [
//     {"algo": "astar"},
//     {"algo": "lrta"},
//     {"algo": "knn", "db": "map.db"},
//     {"algo": "knn", "records": 1000, "seed": 1, "min_len": 3, "m": 10, "hc_cap": 250, "quota": 3},
//     {"algo": "tba", "slice": 50, "trace_ratio": 10}
//   ]
// }
int cmd_bench(const std::string& map_path, const std::string& problems_path, const std::string& spec_path,
              const std::string& out_path) {
  const auto map = load_map_file(map_path);
  auto problems = load_scenario_file(problems_path);
  for (auto& p : problems) {
    if (!p.optimal_cost) {
      const auto path = astar(map, p.start, p.goal);
      if (!path) throw std::runtime_error("unsolvable problem in " + problems_path);
      p.optimal_cost = path->cost;
    }
  }
  std::ifstream sf(spec_path);
  if (!sf) throw std::runtime_error("cannot open bench spec '" + spec_path + "'");
  const json doc = json::parse(sf);
  const unsigned threads = doc.value("threads", 1u);

  std::vector<AlgorithmSpec> specs;
  for (const auto& a : doc.at("algorithms")) {
    AlgorithmSpec spec;
    spec.algorithm = parse_algorithm(a.at("algo").get<std::string>());
    spec.knn.m = a.value("m", spec.knn.m);
    spec.knn.hc_cap = a.value("hc_cap", spec.knn.hc_cap);
    spec.knn.quota_mult = a.value("quota", spec.knn.quota_mult);
    spec.knn.g_max = a.value("g_max", spec.knn.g_max);
    spec.knn.use_kd_index = a.value("kd_index", true);
    if (a.contains("slice")) {
      spec.tba.slice = a["slice"].is_string() ? parse_slice(a["slice"].get<std::string>()) : a["slice"].get<std::size_t>();
    }
    spec.tba.trace_ratio = a.value("trace_ratio", spec.tba.trace_ratio);
    if (spec.algorithm == Algorithm::Knn) {
      if (a.contains("db")) {
        spec.db = std::make_shared<SubgoalDatabase>(load_database_file(a["db"].get<std::string>(), map));
      } else {
        BuildOptions opts{a.value("records", std::size_t{0}), a.value("min_len", std::size_t{3}),
                          a.value("seed", std::uint64_t{0}), a.value("build_threads", 1u)};
        std::cerr << "building database with " << opts.records << " records...\n";
        spec.db = std::make_shared<SubgoalDatabase>(build_database(map, opts));
      }
      spec.param = "N=" + std::to_string(spec.db->size());
    } else if (spec.algorithm == Algorithm::Tba) {
      spec.param = "slice=" + slice_label(spec.tba.slice);
    }
    if (a.contains("label")) spec.param = a["label"].get<std::string>();
    for (auto& ch : spec.param) {
      if (ch == ',') ch = ';';
    }
    specs.push_back(std::move(spec));
  }

  const auto report = run_benchmark(map, problems, specs, threads);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  write_report_csv(out, report);
  print_summary(std::cout, report);
  std::cout << "wrote " << report.rows.size() << " rows to " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kNN LRTA* grid pathfinding: subgoal databases, solvers and benchmarks"};
  app.require_subcommand(1);

  std::string map_path, db_path, problems_path, out_path, spec_path;
  std::size_t records = 0, min_len = 3, count = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<Cost> min_cost;

  auto* build = app.add_subcommand("build-db", "Build a subgoal database for a map");
  build->add_option("map", map_path, "Map file")->required();
  build->add_option("--records", records, "Number of records N")->required();
  build->add_option("--seed", seed, "Random seed");
  build->add_option("--min-len", min_len, "Minimum source path length in states");
  build->add_option("--threads", threads, "Build threads");
  build->add_option("--out", out_path, "Output database file")->required();

  auto* validate = app.add_subcommand("validate-db", "Check every record of a database against its map");
  validate->add_option("map", map_path, "Map file")->required();
  validate->add_option("db", db_path, "Database file")->required();

  auto* gen = app.add_subcommand("gen-problems", "Generate a scenario of solvable problems");
  gen->add_option("map", map_path, "Map file")->required();
  gen->add_option("--count", count, "Number of problems")->required();
  gen->add_option("--min-cost", min_cost, "Minimum optimal cost in deci-cost (default 2*(width+height))");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", out_path, "Output scenario file")->required();

  std::string map_kind = "maze";
  std::int32_t width = 128, height = 128;
  double density = 0.2;
  MazeOptions maze;
  auto* genmap = app.add_subcommand("gen-map", "Generate a synthetic map");
  genmap->add_option("kind", map_kind, "empty, random or maze")->required();
  genmap->add_option("--width", width);
  genmap->add_option("--height", height);
  genmap->add_option("--seed", seed);
  genmap->add_option("--density", density, "Obstacle density for random maps");
  genmap->add_option("--corridor", maze.corridor, "Maze corridor width");
  genmap->add_option("--wall", maze.wall, "Maze wall thickness");
  genmap->add_option("--braid", maze.braid, "Maze extra-opening probability");
  genmap->add_option("--out", out_path, "Output map file")->required();

  std::string algo = "knn", slice = "unlimited";
  AgentConfig knn;
  TbaConfig tba;
  auto* solve_cmd = app.add_subcommand("solve", "Solve every problem of a scenario with one algorithm");
  solve_cmd->add_option("map", map_path, "Map file")->required();
  solve_cmd->add_option("problems", problems_path, "Scenario file")->required();
  solve_cmd->add_option("--algo", algo, "astar, lrta, knn or tba")
      ->check(CLI::IsMember({"astar", "lrta", "knn", "tba"}));
  solve_cmd->add_option("--db", db_path, "Subgoal database (knn)");
  solve_cmd->add_option("--m", knn.m, "Candidate records checked (knn)");
  solve_cmd->add_option("--hc-cap", knn.hc_cap, "Online hill-climbing step cap (knn)");
  solve_cmd->add_option("--quota", knn.quota_mult, "Travel quota multiplier (knn)");
  solve_cmd->add_option("--slice", slice, "Expansions per move or 'unlimited' (tba)");
  solve_cmd->add_option("--trace-ratio", tba.trace_ratio, "Trace steps per expansion (tba)");
  solve_cmd->add_option("--csv", out_path, "Also write a report CSV");

  auto* bench = app.add_subcommand("bench", "Run a benchmark described by a JSON spec");
  bench->add_option("map", map_path, "Map file")->required();
  bench->add_option("problems", problems_path, "Scenario file")->required();
  bench->add_option("--spec", spec_path, "Benchmark spec (JSON)")->required();
  bench->add_option("--out", out_path, "Report CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build_db(map_path, records, seed, min_len, threads, out_path);
    if (*validate) return cmd_validate_db(map_path, db_path);
    if (*gen) return cmd_gen_problems(map_path, count, min_cost, seed, out_path);
    if (*genmap) return cmd_gen_map(map_kind, width, height, seed, density, maze, out_path);
    if (*solve_cmd) {
      tba.slice = parse_slice(slice);
      AlgorithmSpec proto;
      proto.algorithm = parse_algorithm(algo);
      proto.knn = knn;
      proto.tba = tba;
      return cmd_solve(map_path, problems_path, proto, db_path, out_path);
    }
    if (*bench) return cmd_bench(map_path, problems_path, spec_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
