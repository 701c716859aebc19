#include "knnlrta/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace knnlrta {

std::string Suboptimality::to_string(int decimals) const {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const std::int64_t scaled = excess * 100 * scale;
  std::int64_t q = scaled / optimal;
  if (2 * (scaled % optimal) >= optimal) ++q;
  std::string out = std::to_string(q / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(q % scale);
    out += '.' + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return out;
}

Suboptimality suboptimality(Cost c, Cost c_star) {
  if (c_star <= 0) throw InvalidMeasurement("optimal cost must be positive");
  if (c < c_star) {
    throw InvalidMeasurement("solution cost " + std::to_string(c) + " is below the optimal cost " +
                             std::to_string(c_star));
  }
  return Suboptimality{c - c_star, c_star};
}

std::optional<std::uint64_t> break_even(std::uint64_t db_states, double strict_a, double strict_b) {
  if (!(strict_a < strict_b)) return std::nullopt;
  const double saving = strict_b - strict_a;
  auto k = static_cast<std::uint64_t>(std::floor(static_cast<double>(db_states) / saving)) + 1;
  // Guard against rounding in the division.
  auto holds = [&](std::uint64_t n) {
    return static_cast<double>(db_states) + static_cast<double>(n) * strict_a < static_cast<double>(n) * strict_b;
  };
  while (k > 1 && holds(k - 1)) --k;
  while (!holds(k)) ++k;
  return k;
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::AStar: return "astar";
    case Algorithm::Lrta: return "lrta";
    case Algorithm::Knn: return "knn";
    case Algorithm::Tba: return "tba";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "astar") return Algorithm::AStar;
  if (name == "lrta") return Algorithm::Lrta;
  if (name == "knn") return Algorithm::Knn;
  if (name == "tba") return Algorithm::Tba;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected astar, lrta, knn or tba)");
}

Metrics row_metrics(const SearchStats& s) {
  const double subopt = s.optimal_cost > 0 ? suboptimality(s.solution_cost, s.optimal_cost).percent() : 0.0;
  return {static_cast<double>(s.solution_cost), static_cast<double>(s.optimal_cost), subopt,
          static_cast<double>(s.moves),         s.planning_time_per_move_us,        static_cast<double>(s.max_per_move_generated),
          static_cast<double>(s.peak_open),     static_cast<double>(s.peak_closed), static_cast<double>(s.updated_h_states),
          static_cast<double>(s.db_states),     static_cast<double>(s.strict_memory_states()),
          static_cast<double>(s.cumulative_memory_states())};
}

SolveResult run_one(const GridMap& map, const Problem& problem, const AlgorithmSpec& spec) {
  switch (spec.algorithm) {
    case Algorithm::AStar: {
      using Clock = std::chrono::steady_clock;
      AStarCounters counters;
      const auto t0 = Clock::now();
      auto path = astar(map, problem.start, problem.goal, &counters);
      const auto elapsed = std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
      SolveResult r;
      if (!path) throw BenchmarkError("A* found no path");
      r.path = std::move(*path);
      auto& st = r.stats;
      st.solution_cost = r.path.cost;
      st.optimal_cost = problem.optimal_cost.value_or(0);
      st.moves = r.path.states.size() - 1;
      // The whole plan is charged to the problem and spread over its moves.
      st.planning_time_per_move_us = st.moves ? elapsed / static_cast<double>(st.moves) : elapsed;
      st.max_per_move_generated = counters.generated;
      st.peak_open = counters.peak_open;
      st.peak_closed = counters.closed;
      return r;
    }
    case Algorithm::Lrta:
      return lrta_solve(map, problem, spec.knn.g_max, spec.knn.move_budget_factor);
    case Algorithm::Knn: {
      if (!spec.db) throw std::invalid_argument("knn needs a subgoal database");
      return solve(map, *spec.db, problem, spec.knn);
    }
    case Algorithm::Tba: {
      auto t = tba_solve(map, problem, spec.tba);
      SolveResult r;
      r.path = std::move(t.path);
      r.stats = t.stats;
      return r;
    }
  }
  throw std::logic_error("unhandled algorithm");
}

BenchReport run_benchmark(const GridMap& map, const std::vector<Problem>& problems,
                          const std::vector<AlgorithmSpec>& specs, unsigned threads) {
  BenchReport report;
  for (const auto& p : problems) {
    if (!p.optimal_cost) throw std::invalid_argument("benchmark problems need verified optimal costs");
  }
  for (const auto& spec : specs) {
    const auto name = algorithm_name(spec.algorithm);
    std::vector<BenchRow> rows(problems.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      try {
        for (std::size_t i = next++; i < problems.size(); i = next++) {
          const auto& problem = problems[i];
          SolveResult r;
          try {
            r = run_one(map, problem, spec);
          } catch (const std::exception& e) {
            throw BenchmarkError(name + " " + spec.param + " failed on problem " + std::to_string(i) + ": " + e.what());
          }
          if (const auto err = path_error(map, r.path, problem.start, problem.goal); !err.empty()) {
            throw BenchmarkError(name + " " + spec.param + " returned an invalid path on problem " + std::to_string(i) +
                                 ": " + err);
          }
          r.stats.optimal_cost = *problem.optimal_cost;
          if (r.stats.solution_cost < r.stats.optimal_cost) {
            throw BenchmarkError(name + " " + spec.param + " beat the optimal cost on problem " + std::to_string(i));
          }
          rows[i] = BenchRow{name, spec.param, i, r.stats};
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = problems.size();
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  report.aggregates = aggregate(report.rows);
  return report;
}

std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows) {
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.algorithm, r.param);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  std::vector<AggregateRow> out;
  for (const auto& [algo, param] : keys) {
    std::vector<Metrics> group;
    for (const auto& r : rows) {
      if (r.algorithm == algo && r.param == param) group.push_back(row_metrics(r.stats));
    }
    AggregateRow mean{algo, param, "mean", {}};
    AggregateRow median{algo, param, "median", {}};
    for (std::size_t c = 0; c < kMetricCount; ++c) {
      std::vector<double> col;
      col.reserve(group.size());
      double sum = 0;
      for (const auto& m : group) {
        col.push_back(m[c]);
        sum += m[c];
      }
      mean.values[c] = sum / static_cast<double>(col.size());
      std::sort(col.begin(), col.end());
      const std::size_t n = col.size();
      median.values[c] = n % 2 ? col[n / 2] : (col[n / 2 - 1] + col[n / 2]) / 2.0;
    }
    out.push_back(mean);
    out.push_back(median);
  }
  return out;
}

namespace {

constexpr const char* kHeader =
    "algorithm,param,problem,cost,optimal,subopt_pct,moves,us_per_move,max_gen_per_move,peak_open,peak_closed,"
    "updated_h,db_states,strict_mem_states,cumulative_mem_states";

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::runtime_error("bad number '" + s + "' in report");
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::runtime_error("bad integer '" + s + "' in report");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_report_csv(std::ostream& out, const BenchReport& report) {
  out << "# memory columns count stored states; bytes = states * " << kBytesPerStoredState
      << " (4-byte state id + 4-byte payload)\n";
  out << kHeader << '\n';
  for (const auto& r : report.rows) {
    const auto& s = r.stats;
    const std::string subopt = s.optimal_cost > 0 ? suboptimality(s.solution_cost, s.optimal_cost).to_string(2) : "";
    out << r.algorithm << ',' << r.param << ',' << r.problem << ',' << s.solution_cost << ',' << s.optimal_cost << ','
        << subopt << ',' << s.moves << ',' << shortest(s.planning_time_per_move_us) << ',' << s.max_per_move_generated
        << ',' << s.peak_open << ',' << s.peak_closed << ',' << s.updated_h_states << ',' << s.db_states << ','
        << s.strict_memory_states() << ',' << s.cumulative_memory_states() << '\n';
  }
  for (const auto& a : report.aggregates) {
    out << a.algorithm << ',' << a.param << ',' << a.kind;
    for (const double v : a.values) out << ',' << shortest(v);
    out << '\n';
  }
}

BenchReport read_report_csv(std::istream& in) {
  BenchReport report;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kHeader) throw std::runtime_error("unexpected report header");
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 15) throw std::runtime_error("report row has " + std::to_string(f.size()) + " fields, expected 15");
    if (f[2] == "mean" || f[2] == "median") {
      AggregateRow a{f[0], f[1], f[2], {}};
      for (std::size_t c = 0; c < kMetricCount; ++c) a.values[c] = parse_double(f[3 + c]);
      report.aggregates.push_back(a);
      continue;
    }
    BenchRow r;
    r.algorithm = f[0];
    r.param = f[1];
    r.problem = parse_uint(f[2]);
    auto& s = r.stats;
    s.solution_cost = static_cast<Cost>(parse_uint(f[3]));
    s.optimal_cost = static_cast<Cost>(parse_uint(f[4]));
    s.moves = parse_uint(f[6]);
    s.planning_time_per_move_us = parse_double(f[7]);
    s.max_per_move_generated = parse_uint(f[8]);
    s.peak_open = parse_uint(f[9]);
    s.peak_closed = parse_uint(f[10]);
    s.updated_h_states = parse_uint(f[11]);
    s.db_states = parse_uint(f[12]);
    if (parse_uint(f[13]) != s.strict_memory_states() || parse_uint(f[14]) != s.cumulative_memory_states()) {
      throw std::runtime_error("memory totals in report row do not match their components");
    }
    report.rows.push_back(r);
  }
  return report;
}

void print_summary(std::ostream& out, const BenchReport& report) {
  out << std::left << std::setw(8) << "algo" << std::setw(16) << "param" << std::right << std::setw(14) << "subopt %"
      << std::setw(14) << "us/move" << std::setw(16) << "strict KB" << std::setw(16) << "cumulative KB" << '\n';
  for (const auto& a : report.aggregates) {
    if (a.kind != "mean") continue;
    out << std::left << std::setw(8) << a.algorithm << std::setw(16) << a.param << std::right << std::fixed
        << std::setprecision(2) << std::setw(14) << a.values[2] << std::setw(14) << a.values[4] << std::setw(16)
        << a.values[10] * kBytesPerStoredState / 1024.0 << std::setw(16) << a.values[11] * kBytesPerStoredState / 1024.0
        << '\n';
    out.unsetf(std::ios::fixed);
  }
}

}  // namespace knnlrta
