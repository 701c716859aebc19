#include <doctest.h>

#include <sstream>

#include "knnlrta/bench.hpp"
#include "knnlrta/map_gen.hpp"
#include "knnlrta/problems.hpp"
#include "knnlrta/subgoal_db.hpp"

using namespace knnlrta;

namespace {

std::optional<std::uint64_t> break_even_brute(std::uint64_t db, double a, double b, std::uint64_t limit) {
  for (std::uint64_t k = 1; k <= limit; ++k)
    if (static_cast<double>(db) + static_cast<double>(k) * a < static_cast<double>(k) * b) return k;
  return std::nullopt;
}

}  // namespace

TEST_SUITE("suboptimality") {
  TEST_CASE("examples") {
    CHECK(suboptimality(150, 150).percent() == 0.0);
    CHECK(suboptimality(150, 150).to_string() == "0.00");
    CHECK(suboptimality(150, 100).to_string() == "50.00");
    CHECK(suboptimality(164, 150).to_string() == "9.33");
    CHECK(suboptimality(164, 150).excess == 14);
    CHECK(suboptimality(162, 150).to_string() == "8.00");
  }

  TEST_CASE("rounding is half up and exact") {
    CHECK(suboptimality(801, 800).to_string() == "0.13");  // 0.125
    CHECK(suboptimality(1601, 1600).to_string() == "0.06");  // 0.0625
    CHECK(suboptimality(5, 3).to_string(0) == "67");
    CHECK(suboptimality(4, 3).to_string(3) == "33.333");
    CHECK(suboptimality(31, 10).to_string() == "210.00");
  }

  TEST_CASE("invalid measurements") {
    CHECK_THROWS_AS(suboptimality(149, 150), InvalidMeasurement);
    CHECK_THROWS_AS(suboptimality(10, 0), InvalidMeasurement);
  }
}

TEST_SUITE("break_even") {
  TEST_CASE("examples") {
    CHECK(break_even(1000, 10, 20) == 101u);
    CHECK(break_even(0, 1, 2) == 1u);
    CHECK_FALSE(break_even(1000, 20, 20).has_value());
    CHECK_FALSE(break_even(1000, 30, 20).has_value());
  }

  TEST_CASE("agrees with a brute-force count") {
    for (std::uint64_t db : {0, 1, 7, 100, 12345})
      for (double a : {0.0, 1.5, 10.0, 33.25})
        for (double b : {0.5, 2.0, 10.0, 34.0, 900.0}) {
          const auto got = break_even(db, a, b);
          if (a >= b) {
            CHECK_FALSE(got.has_value());
            continue;
          }
          CHECK(got == break_even_brute(db, a, b, 100'000'000));
        }
  }
}

TEST_SUITE("benchmark") {
  TEST_CASE("algorithm names") {
    for (auto a : {Algorithm::AStar, Algorithm::Lrta, Algorithm::Knn, Algorithm::Tba})
      CHECK(parse_algorithm(algorithm_name(a)) == a);
    CHECK_THROWS_AS(parse_algorithm("dijkstra"), std::invalid_argument);
  }

  TEST_CASE("run, aggregate and round-trip the report") {
    const auto m = maze_map(48, 48, MazeOptions{3, 1, 0.2}, 1);
    const auto problems = generate_problems(m, 6, default_min_cost(m), 2);
    auto db = std::make_shared<const SubgoalDatabase>(build_database(m, 50, 3, 3));
    std::vector<AlgorithmSpec> specs(4);
    specs[0].algorithm = Algorithm::AStar;
    specs[1].algorithm = Algorithm::Lrta;
    specs[2].algorithm = Algorithm::Knn;
    specs[2].param = "N=50";
    specs[2].db = db;
    specs[3].algorithm = Algorithm::Tba;
    specs[3].param = "slice=8";
    specs[3].tba.slice = 8;

    const auto report = run_benchmark(m, problems, specs, 2);
    REQUIRE(report.rows.size() == 24);
    REQUIRE(report.aggregates.size() == 8);
    for (const auto& r : report.rows) {
      CHECK(r.stats.optimal_cost == *problems[r.problem].optimal_cost);
      CHECK(r.stats.solution_cost >= r.stats.optimal_cost);
      if (r.algorithm == "astar") CHECK(row_metrics(r.stats)[2] == 0.0);
      if (r.algorithm == "knn") CHECK(r.stats.db_states == db->stored_states());
    }
    CHECK(aggregate(report.rows) == report.aggregates);
    CHECK(report.aggregates[0].kind == "mean");
    CHECK(report.aggregates[1].kind == "median");

    // same rows, regardless of the thread count, apart from timing
    const auto serial = run_benchmark(m, problems, specs, 1);
    REQUIRE(serial.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
      CHECK(serial.rows[i].algorithm == report.rows[i].algorithm);
      CHECK(serial.rows[i].problem == report.rows[i].problem);
      CHECK(serial.rows[i].stats.same_counters(report.rows[i].stats));
    }

    std::stringstream csv;
    write_report_csv(csv, report);
    const auto back = read_report_csv(csv);
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
      CHECK(back.rows[i].algorithm == report.rows[i].algorithm);
      CHECK(back.rows[i].param == report.rows[i].param);
      CHECK(back.rows[i].problem == report.rows[i].problem);
      CHECK(back.rows[i].stats.same_counters(report.rows[i].stats));
    }
    CHECK(back.aggregates == report.aggregates);
    CHECK(aggregate(back.rows).size() == back.aggregates.size());

    std::ostringstream summary;
    print_summary(summary, report);
    CHECK(summary.str().find("knn") != std::string::npos);
  }

  TEST_CASE("empty report") {
    std::stringstream csv;
    write_report_csv(csv, BenchReport{});
    const auto back = read_report_csv(csv);
    CHECK(back.rows.empty());
    CHECK(back.aggregates.empty());
  }

  TEST_CASE("malformed reports") {
    std::istringstream bad_header("algo,param\n");
    CHECK_THROWS(read_report_csv(bad_header));
    std::stringstream csv;
    write_report_csv(csv, BenchReport{});
    std::istringstream bad_totals(csv.str() + "astar,,0,100,100,0.00,10,1,8,3,4,0,0,8,7\n");
    CHECK_THROWS(read_report_csv(bad_totals));
  }

  TEST_CASE("knn without a database is an error") {
    const auto m = empty_map(8, 8);
    AlgorithmSpec s;
    s.algorithm = Algorithm::Knn;
    CHECK_THROWS_AS(run_one(m, Problem{{0, 0}, {7, 7}, 98}, s), std::invalid_argument);
  }
}
