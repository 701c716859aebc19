#include "knnlrta/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace knnlrta {

GridMap::GridMap(std::int32_t width, std::int32_t height, std::vector<std::uint8_t> passable)
    : width_(width), height_(height), cells_(std::move(passable)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("map dimensions must be positive");
  }
  const auto cells = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (cells > kMaxMapCells) {
    throw std::invalid_argument("map has " + std::to_string(cells) + " cells, limit is 2^26");
  }
  if (cells_.size() != cells) {
    throw std::invalid_argument("passability vector size does not match width * height");
  }
  for (auto& c : cells_) c = c ? 1 : 0;
  passable_count_ = static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

Neighbors GridMap::neighbors(Coord s) const {
  Neighbors out;
  // Cardinal passability first, so diagonals can apply the corner-cut rule.
  bool open[8];
  for (int d = 0; d < 8; d += 2) {
    open[d] = passable(Coord{s.x + kDirDx[d], s.y + kDirDy[d]});
  }
  for (int d = 0; d < 8; ++d) {
    const Coord to{s.x + kDirDx[d], s.y + kDirDy[d]};
    if (d % 2 == 0) {
      if (open[d]) out.push(to, kCardinalCost);
    } else if (open[d - 1] && open[(d + 1) % 8] && passable(to)) {
      out.push(to, kDiagonalCost);
    }
  }
  return out;
}

Cost GridMap::edge_cost(Coord a, Coord b) const {
  if (!passable(a)) return kInfiniteCost;
  for (const auto& step : neighbors(a)) {
    if (step.to == b) return step.cost;
  }
  return kInfiniteCost;
}

}  // namespace knnlrta
