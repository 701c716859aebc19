#pragma once

#include <cstdint>

#include "knnlrta/grid.hpp"

namespace knnlrta {

GridMap empty_map(std::int32_t width, std::int32_t height);

/// Each cell blocked independently with probability `density`; every cell outside the
/// largest connected component is then blocked too.
GridMap random_obstacle_map(std::int32_t width, std::int32_t height, double density, std::uint64_t seed);

struct MazeOptions {
  std::int32_t corridor = 4;  // corridor width in cells
  std::int32_t wall = 1;      // wall thickness in cells
  double braid = 0.1;         // probability that a remaining inner wall segment is opened
};

/// Depth-first maze on a lattice of corridor-sized rooms, optionally braided with extra
/// openings. Cells past the last full lattice column or row stay blocked.
GridMap maze_map(std::int32_t width, std::int32_t height, const MazeOptions& options, std::uint64_t seed);

/// Blocks every passable cell not connected to the largest component.
GridMap keep_largest_component(const GridMap& map);

}  // namespace knnlrta
