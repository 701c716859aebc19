#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "knnlrta/grid.hpp"
#include "knnlrta/problems.hpp"

namespace knnlrta {

// Octile map text:
//   type octile
//   height <H>
//   width <W>
//   map
//   <H rows of exactly W characters>
// Passable: '.', 'G', 'S'. Blocked: '@', 'O', 'T', 'W'.

class MapParseError : public std::runtime_error {
 public:
  enum class Kind { MalformedHeader, DimensionMismatch, UnknownCharacter };

  MapParseError(Kind kind, std::size_t line, std::size_t column, const std::string& what);

  Kind kind() const { return kind_; }
  /// 1-based; column is 0 when the error concerns a whole line.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

GridMap parse_map(std::istream& in);
GridMap parse_map_string(std::string_view text);
GridMap load_map_file(const std::string& path);
void write_map(std::ostream& out, const GridMap& map);

/// Builds a map from rows of map characters (tests and tools). Same character rules as parse_map.
GridMap map_from_rows(const std::vector<std::string>& rows);

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Scenario text: one problem per line, `start_x start_y goal_x goal_y optimal_cost`.
// Lines starting with '#' are comments. An optimal cost of `?` means unknown.
std::vector<Problem> parse_scenario(std::istream& in);
std::vector<Problem> load_scenario_file(const std::string& path);
void write_scenario(std::ostream& out, const std::vector<Problem>& problems);

}  // namespace knnlrta
