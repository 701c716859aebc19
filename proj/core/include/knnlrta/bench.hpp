#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knnlrta/knn_agent.hpp"
#include "knnlrta/problems.hpp"
#include "knnlrta/stats.hpp"
#include "knnlrta/subgoal_db.hpp"
#include "knnlrta/tba_star.hpp"

namespace knnlrta {

class InvalidMeasurement : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (c / c* - 1) * 100, kept as the exact ratio excess / optimal.
struct Suboptimality {
  Cost excess = 0;
  Cost optimal = 1;

  double percent() const { return 100.0 * static_cast<double>(excess) / static_cast<double>(optimal); }
  /// Rounded half up to `decimals` places using integer arithmetic.
  std::string to_string(int decimals = 2) const;
};

/// Throws InvalidMeasurement unless c_star > 0 and c >= c_star.
Suboptimality suboptimality(Cost c, Cost c_star);

/// Smallest K with db_states + K * strict_a < K * strict_b, or nullopt ("never") when
/// strict_a >= strict_b.
std::optional<std::uint64_t> break_even(std::uint64_t db_states, double strict_a, double strict_b);

// Memory is reported in stored states. For display a state costs 4 bytes of id plus 4 bytes
// of per-entry payload (a g or h value, or a record length).
inline constexpr double kBytesPerStoredState = 8.0;

enum class Algorithm { AStar, Lrta, Knn, Tba };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::AStar;
  std::string param;  // label used in reports, e.g. "N=1000" or "slice=50"
  AgentConfig knn;
  TbaConfig tba;
  std::shared_ptr<const SubgoalDatabase> db;  // required for Knn
};

struct BenchRow {
  std::string algorithm;
  std::string param;
  std::size_t problem = 0;
  SearchStats stats;
};

inline constexpr std::size_t kMetricCount = 12;
// cost, optimal, subopt_pct, moves, us_per_move, max_gen_per_move, peak_open, peak_closed,
// updated_h, db_states, strict_mem_states, cumulative_mem_states
using Metrics = std::array<double, kMetricCount>;

Metrics row_metrics(const SearchStats& s);

struct AggregateRow {
  std::string algorithm;
  std::string param;
  std::string kind;  // "mean" or "median"
  Metrics values{};
  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<AggregateRow> aggregates;
};

class BenchmarkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one problem with one algorithm. The returned path is not yet validated.
SolveResult run_one(const GridMap& map, const Problem& problem, const AlgorithmSpec& spec);

/// Every (algorithm, parameter) over every problem. Each returned path is re-validated edge
/// by edge; an invalid path throws BenchmarkError naming the algorithm and problem.
/// Problems must carry optimal costs.
BenchReport run_benchmark(const GridMap& map, const std::vector<Problem>& problems,
                          const std::vector<AlgorithmSpec>& specs, unsigned threads = 1);

/// Mean and median rows per (algorithm, param), in first-appearance order.
std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows);

// CSV columns: algorithm,param,problem,cost,optimal,subopt_pct,moves,us_per_move,
// max_gen_per_move,peak_open,peak_closed,updated_h,db_states,strict_mem_states,
// cumulative_mem_states. Aggregate rows carry "mean" or "median" in the problem column.
// Lines starting with '#' are comments.
void write_report_csv(std::ostream& out, const BenchReport& report);
BenchReport read_report_csv(std::istream& in);

/// Human-readable table of the mean rows.
void print_summary(std::ostream& out, const BenchReport& report);

}  // namespace knnlrta
