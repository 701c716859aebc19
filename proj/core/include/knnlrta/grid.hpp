#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <vector>

namespace knnlrta {

// Edge costs are stored in deci-units: a cardinal step costs 10, a diagonal 14.
using Cost = std::int64_t;

inline constexpr Cost kCardinalCost = 10;
inline constexpr Cost kDiagonalCost = 14;
// Larger than any path cost on a supported map (width * height <= 2^26).
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max() / 4;

inline constexpr std::size_t kMaxMapCells = std::size_t{1} << 26;

using StateId = std::uint32_t;

struct Coord {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr bool operator==(Coord, Coord) = default;
  friend constexpr auto operator<=>(Coord a, Coord b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

/// Octile distance in deci-cost: 14 per diagonal, 10 per remaining straight step.
constexpr Cost octile_h(Coord a, Coord b) {
  const Cost dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const Cost dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  const Cost lo = dx < dy ? dx : dy;
  const Cost hi = dx < dy ? dy : dx;
  return kDiagonalCost * lo + kCardinalCost * (hi - lo);
}

// Fixed enumeration order N, NE, E, SE, S, SW, W, NW. North is y - 1.
enum class Direction : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<std::int32_t, 8> kDirDx = {0, 1, 1, 1, 0, -1, -1, -1};
inline constexpr std::array<std::int32_t, 8> kDirDy = {-1, -1, 0, 1, 1, 1, 0, -1};

struct Step {
  Coord to;
  Cost cost = 0;
};

// At most eight successors; kept inline so neighbor generation never allocates.
class Neighbors {
 public:
  void push(Coord c, Cost cost) { steps_[size_++] = Step{c, cost}; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Step& operator[](std::size_t i) const { return steps_[i]; }
  const Step* begin() const { return steps_.data(); }
  const Step* end() const { return steps_.data() + size_; }

 private:
  std::array<Step, 8> steps_{};
  std::size_t size_ = 0;
};

/// Passability grid with octile connectivity. Immutable once constructed.
class GridMap {
 public:
  GridMap() = default;
  /// `passable` is row-major, `width * height` entries. Throws std::invalid_argument
  /// on empty or oversized dimensions, or a size mismatch.
  GridMap(std::int32_t width, std::int32_t height, std::vector<std::uint8_t> passable);

  std::int32_t width() const { return width_; }
  std::int32_t height() const { return height_; }
  std::size_t cell_count() const { return cells_.size(); }
  /// Number of passable cells.
  std::size_t passable_count() const { return passable_count_; }

  bool in_bounds(Coord c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool passable(Coord c) const { return in_bounds(c) && cells_[id(c)] != 0; }
  bool passable_id(StateId s) const { return cells_[s] != 0; }

  StateId id(Coord c) const { return static_cast<StateId>(c.y) * static_cast<StateId>(width_) + static_cast<StateId>(c.x); }
  Coord coord(StateId s) const {
    return Coord{static_cast<std::int32_t>(s % static_cast<StateId>(width_)),
                 static_cast<std::int32_t>(s / static_cast<StateId>(width_))};
  }

  /// Successors of a passable cell in N, NE, E, SE, S, SW, W, NW order.
  /// Diagonals require both adjacent cardinal cells to be passable.
  Neighbors neighbors(Coord s) const;

  /// Cost of the single edge a -> b, or kInfiniteCost if b is not a successor of a.
  Cost edge_cost(Coord a, Coord b) const;

  const std::vector<std::uint8_t>& cells() const { return cells_; }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  std::int32_t width_ = 0;
  std::int32_t height_ = 0;
  std::vector<std::uint8_t> cells_;
  std::size_t passable_count_ = 0;
};

inline Neighbors neighbors(const GridMap& map, Coord s) { return map.neighbors(s); }

}  // namespace knnlrta

template <>
struct std::hash<knnlrta::Coord> {
  std::size_t operator()(knnlrta::Coord c) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.y)) << 32) |
                                      static_cast<std::uint32_t>(c.x));
  }
};
