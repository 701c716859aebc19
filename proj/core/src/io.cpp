#include "knnlrta/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace knnlrta {
namespace {

bool passable_char(char c) { return c == '.' || c == 'G' || c == 'S'; }
bool blocked_char(char c) { return c == '@' || c == 'O' || c == 'T' || c == 'W'; }

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::int32_t parse_dimension(const std::string& line, std::string_view key, std::size_t lineno) {
  std::istringstream ss(line);
  std::string word;
  long long value = 0;
  std::string rest;
  if (!(ss >> word) || word != key || !(ss >> value) || (ss >> rest)) {
    throw MapParseError(MapParseError::Kind::MalformedHeader, lineno, 0,
                        "expected '" + std::string(key) + " <n>', got '" + line + "'");
  }
  if (value <= 0 || value > (1 << 26)) {
    throw MapParseError(MapParseError::Kind::MalformedHeader, lineno, 0,
                        std::string(key) + " out of range: " + std::to_string(value));
  }
  return static_cast<std::int32_t>(value);
}

std::string where(std::size_t line, std::size_t column) {
  std::string s = "line " + std::to_string(line);
  if (column) s += ", column " + std::to_string(column);
  return s;
}

}  // namespace

MapParseError::MapParseError(Kind kind, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("map parse error at " + where(line, column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column) {}

GridMap parse_map(std::istream& in) {
  using Kind = MapParseError::Kind;
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&](std::string_view what) {
    if (!std::getline(in, line)) {
      throw MapParseError(Kind::MalformedHeader, lineno + 1, 0, "missing '" + std::string(what) + "' line");
    }
    ++lineno;
    strip_cr(line);
  };

  next_line("type");
  if (trim(line) != "type octile") {
    throw MapParseError(Kind::MalformedHeader, lineno, 0, "expected 'type octile', got '" + line + "'");
  }
  next_line("height");
  const auto height = parse_dimension(line, "height", lineno);
  next_line("width");
  const auto width = parse_dimension(line, "width", lineno);
  if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) > kMaxMapCells) {
    throw MapParseError(Kind::MalformedHeader, lineno, 0, "map exceeds 2^26 cells");
  }
  next_line("map");
  if (trim(line) != "map") {
    throw MapParseError(Kind::MalformedHeader, lineno, 0, "expected 'map', got '" + line + "'");
  }

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (std::int32_t row = 0; row < height; ++row) {
    if (!std::getline(in, line)) {
      throw MapParseError(Kind::DimensionMismatch, lineno + 1, 0,
                          "header declares height " + std::to_string(height) + " but body has " +
                              std::to_string(row) + " rows");
    }
    ++lineno;
    strip_cr(line);
    if (line.size() != static_cast<std::size_t>(width)) {
      throw MapParseError(Kind::DimensionMismatch, lineno, 0,
                          "row has " + std::to_string(line.size()) + " characters, expected " + std::to_string(width));
    }
    for (std::size_t col = 0; col < line.size(); ++col) {
      const char c = line[col];
      if (passable_char(c)) {
        cells.push_back(1);
      } else if (blocked_char(c)) {
        cells.push_back(0);
      } else {
        throw MapParseError(Kind::UnknownCharacter, lineno, col + 1, std::string("unknown cell character '") + c + "'");
      }
    }
  }
  // Trailing blank lines are tolerated; anything else is an extra row.
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (!trim(line).empty()) {
      throw MapParseError(Kind::DimensionMismatch, lineno, 0,
                          "body has more than the declared " + std::to_string(height) + " rows");
    }
  }
  return GridMap(width, height, std::move(cells));
}

GridMap parse_map_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_map(in);
}

GridMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file '" + path + "'");
  return parse_map(in);
}

void write_map(std::ostream& out, const GridMap& map) {
  out << "type octile\nheight " << map.height() << "\nwidth " << map.width() << "\nmap\n";
  std::string row(static_cast<std::size_t>(map.width()), '.');
  for (std::int32_t y = 0; y < map.height(); ++y) {
    for (std::int32_t x = 0; x < map.width(); ++x) {
      row[static_cast<std::size_t>(x)] = map.passable(Coord{x, y}) ? '.' : '@';
    }
    out << row << '\n';
  }
}

GridMap map_from_rows(const std::vector<std::string>& rows) {
  std::ostringstream text;
  text << "type octile\nheight " << rows.size() << "\nwidth " << (rows.empty() ? 0 : rows.front().size()) << "\nmap\n";
  for (const auto& r : rows) text << r << '\n';
  return parse_map_string(text.str());
}

ScenarioParseError::ScenarioParseError(std::size_t line, const std::string& what)
    : std::runtime_error("scenario parse error at line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<Problem> parse_scenario(std::istream& in) {
  std::vector<Problem> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream ss(t);
    long long sx, sy, gx, gy;
    std::string cost, rest;
    if (!(ss >> sx >> sy >> gx >> gy >> cost) || (ss >> rest)) {
      throw ScenarioParseError(lineno, "expected 'start_x start_y goal_x goal_y optimal_cost'");
    }
    Problem p{Coord{static_cast<std::int32_t>(sx), static_cast<std::int32_t>(sy)},
              Coord{static_cast<std::int32_t>(gx), static_cast<std::int32_t>(gy)}, std::nullopt};
    if (cost != "?") {
      Cost c = 0;
      const auto [ptr, ec] = std::from_chars(cost.data(), cost.data() + cost.size(), c);
      if (ec != std::errc{} || ptr != cost.data() + cost.size() || c < 0) {
        throw ScenarioParseError(lineno, "bad optimal cost '" + cost + "'");
      }
      p.optimal_cost = c;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Problem> load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file '" + path + "'");
  return parse_scenario(in);
}

void write_scenario(std::ostream& out, const std::vector<Problem>& problems) {
  out << "# start_x start_y goal_x goal_y optimal_cost_decicost\n";
  for (const auto& p : problems) {
    out << p.start.x << ' ' << p.start.y << ' ' << p.goal.x << ' ' << p.goal.y << ' ';
    if (p.optimal_cost) {
      out << *p.optimal_cost;
    } else {
      out << '?';
    }
    out << '\n';
  }
}

}  // namespace knnlrta
