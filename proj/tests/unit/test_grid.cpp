#include <doctest.h>

#include <sstream>

#include "knnlrta/io.hpp"
#include "knnlrta/map_gen.hpp"
#include "knnlrta/rng.hpp"
#include "knnlrta/search.hpp"
#include "oracles.hpp"

using namespace knnlrta;

namespace {

std::string map_text(int h, int w, const std::vector<std::string>& rows) {
  std::ostringstream out;
  out << "type octile\nheight " << h << "\nwidth " << w << "\nmap\n";
  for (const auto& r : rows) out << r << '\n';
  return out.str();
}

MapParseError::Kind parse_error_kind(const std::string& text) {
  try {
    parse_map_string(text);
  } catch (const MapParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return MapParseError::Kind::MalformedHeader;
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("octile distance") {
    CHECK(octile_h({0, 0}, {0, 0}) == 0);
    CHECK(octile_h({0, 0}, {3, 5}) == 62);
    CHECK(octile_h({2, 7}, {2, 3}) == 40);
    CHECK(octile_h({3, 5}, {0, 0}) == 62);
    static_assert(octile_h({0, 0}, {9, 9}) == 126);
  }

  TEST_CASE("parse all-open 3x3") {
    const auto m = parse_map_string(map_text(3, 3, {"...", "...", "..."}));
    CHECK(m.width() == 3);
    CHECK(m.height() == 3);
    CHECK(m.passable_count() == 9);
  }

  TEST_CASE("parse single obstacle") {
    const auto m = parse_map_string(map_text(3, 3, {"...", ".@.", "..."}));
    CHECK(m.passable_count() == 8);
    CHECK_FALSE(m.passable({1, 1}));
    CHECK(m.passable({0, 1}));
  }

  TEST_CASE("character classes") {
    const auto m = parse_map_string(map_text(1, 7, {".GS@OTW"}));
    CHECK(m.passable({0, 0}));
    CHECK(m.passable({1, 0}));
    CHECK(m.passable({2, 0}));
    for (int x = 3; x < 7; ++x) CHECK_FALSE(m.passable({x, 0}));
  }

  TEST_CASE("parse errors") {
    using K = MapParseError::Kind;
    CHECK(parse_error_kind(map_text(4, 3, {"...", "...", "..."})) == K::DimensionMismatch);
    CHECK(parse_error_kind(map_text(2, 3, {"...", "...", "..."})) == K::DimensionMismatch);
    CHECK(parse_error_kind(map_text(2, 3, {"...", "...."})) == K::DimensionMismatch);
    CHECK(parse_error_kind(map_text(2, 3, {"...", ".x."})) == K::UnknownCharacter);
    CHECK(parse_error_kind("type hex\nheight 1\nwidth 1\nmap\n.\n") == K::MalformedHeader);
    CHECK(parse_error_kind("type octile\nheight one\nwidth 1\nmap\n.\n") == K::MalformedHeader);
    CHECK(parse_error_kind("type octile\nheight 1\nwidth 1\n.\n") == K::MalformedHeader);
    CHECK(parse_error_kind("") == K::MalformedHeader);
  }

  TEST_CASE("unknown character position") {
    try {
      parse_map_string(map_text(2, 3, {"...", ".x."}));
      FAIL("no error");
    } catch (const MapParseError& e) {
      CHECK(e.line() == 6);
      CHECK(e.column() == 2);
    }
  }

  TEST_CASE("CRLF input and trailing blank lines") {
    const auto m = parse_map_string("type octile\r\nheight 2\r\nwidth 2\r\nmap\r\n.@\r\n..\r\n\r\n");
    CHECK(m.passable_count() == 3);
  }

  TEST_CASE("write and parse round trip") {
    const auto m = random_obstacle_map(37, 21, 0.3, 4);
    std::ostringstream out;
    write_map(out, m);
    CHECK(parse_map_string(out.str()) == m);
  }

  TEST_CASE("neighbors of an interior cell") {
    const auto m = empty_map(5, 5);
    const auto n = m.neighbors({2, 2});
    REQUIRE(n.size() == 8);
    int cardinal = 0, diagonal = 0;
    for (const auto& s : n) (s.cost == 10 ? cardinal : diagonal)++;
    CHECK(cardinal == 4);
    CHECK(diagonal == 4);
    // fixed order N, NE, E, SE, S, SW, W, NW
    const std::vector<Coord> order{{2, 1}, {3, 1}, {3, 2}, {3, 3}, {2, 3}, {1, 3}, {1, 2}, {1, 1}};
    for (std::size_t i = 0; i < 8; ++i) CHECK(n[i].to == order[i]);
  }

  TEST_CASE("blocked east neighbor removes three moves") {
    const auto m = map_from_rows({".....", ".....", "...@.", ".....", "....."});
    const auto n = m.neighbors({2, 2});
    CHECK(n.size() == 5);
    for (const auto& s : n) CHECK(s.to.x <= 2);
  }

  TEST_CASE("corner cell") {
    CHECK(empty_map(5, 5).neighbors({0, 0}).size() == 3);
  }

  TEST_CASE("edge cost") {
    const auto m = map_from_rows({"...", ".@.", "..."});
    CHECK(m.edge_cost({0, 0}, {1, 0}) == 10);
    CHECK(m.edge_cost({0, 0}, {1, 1}) == kInfiniteCost);
    CHECK(m.edge_cost({0, 0}, {2, 0}) == kInfiniteCost);
    CHECK(empty_map(3, 3).edge_cost({0, 0}, {1, 1}) == 14);
  }

  TEST_CASE("invalid dimensions") {
    CHECK_THROWS_AS(GridMap(0, 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(GridMap(2, 2, std::vector<std::uint8_t>(3, 1)), std::invalid_argument);
  }

  TEST_CASE("neighbors match the movement rule and are symmetric") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto m = random_obstacle_map(24, 24, 0.35, seed);
      for (const Coord a : oracle::passable_cells(m)) {
        const auto n = m.neighbors(a);
        const auto ref = oracle::successors(m, a);
        REQUIRE(n.size() == ref.size());
        for (const auto& s : n) {
          CHECK(std::find(ref.begin(), ref.end(), std::pair{s.to, s.cost}) != ref.end());
          CHECK(m.edge_cost(s.to, a) == s.cost);
        }
      }
    }
  }

  TEST_CASE("octile heuristic is admissible and consistent") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto m = random_obstacle_map(12, 12, 0.3, 100 + seed);
      const oracle::AllPairs d(m);
      const auto cells = oracle::passable_cells(m);
      Rng rng(seed);
      for (int i = 0; i < 2500; ++i) {
        const Coord a = cells[rng.below(cells.size())];
        const Coord b = cells[rng.below(cells.size())];
        const Coord c = cells[rng.below(cells.size())];
        CHECK(octile_h(a, b) == oracle::octile(a, b));
        CHECK(octile_h(a, b) <= d.at(a, b));
        CHECK(std::abs(octile_h(a, c) - octile_h(b, c)) <= d.at(a, b));
        ++checked;
      }
    }
    CHECK(checked == 10000);
  }

  TEST_CASE("generated maps keep a single component") {
    const std::vector<GridMap> maps{random_obstacle_map(40, 30, 0.4, 1), maze_map(64, 64, MazeOptions{}, 2),
                                    maze_map(96, 80, MazeOptions{8, 2, 0.3}, 3)};
    for (const auto& m : maps) {
      const auto cells = oracle::passable_cells(m);
      REQUIRE(!cells.empty());
      const auto field = dijkstra_oracle(m, cells.front());
      for (const Coord c : cells) CHECK(field.reachable(c));
    }
  }

  TEST_CASE("map generators are deterministic") {
    CHECK(maze_map(64, 64, MazeOptions{}, 9) == maze_map(64, 64, MazeOptions{}, 9));
    CHECK_FALSE(maze_map(64, 64, MazeOptions{}, 9) == maze_map(64, 64, MazeOptions{}, 10));
    CHECK(random_obstacle_map(20, 20, 0.2, 5) == random_obstacle_map(20, 20, 0.2, 5));
  }

  TEST_CASE("keep_largest_component") {
    const auto m = map_from_rows({"..@...", "..@...", "..@..."});
    const auto k = keep_largest_component(m);
    CHECK(k.passable_count() == 9);
    CHECK_FALSE(k.passable({0, 0}));
    CHECK(k.passable({5, 2}));
  }
}

TEST_SUITE("scenario") {
  TEST_CASE("parse with comments and unknown cost") {
    std::istringstream in("# header\n1 2 3 4 56\n\n0 0 5 5 ?\n");
    const auto p = parse_scenario(in);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == Problem{{1, 2}, {3, 4}, 56});
    CHECK(p[1].start == Coord{0, 0});
    CHECK_FALSE(p[1].optimal_cost.has_value());
  }

  TEST_CASE("malformed line reports its number") {
    std::istringstream in("1 2 3 4 5\n1 2 x 4 5\n");
    try {
      parse_scenario(in);
      FAIL("no error");
    } catch (const ScenarioParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("round trip") {
    const std::vector<Problem> ps{{{1, 2}, {3, 4}, 56}, {{7, 0}, {0, 7}, std::nullopt}};
    std::ostringstream out;
    write_scenario(out, ps);
    std::istringstream in(out.str());
    CHECK(parse_scenario(in) == ps);
  }
}
