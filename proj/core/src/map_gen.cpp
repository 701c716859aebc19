#include "knnlrta/map_gen.hpp"

#include <stdexcept>
#include <vector>

#include "knnlrta/rng.hpp"

namespace knnlrta {

GridMap empty_map(std::int32_t width, std::int32_t height) {
  return GridMap(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 1));
}

GridMap keep_largest_component(const GridMap& map) {
  std::vector<std::int32_t> label(map.cell_count(), -1);
  std::vector<std::size_t> sizes;
  std::vector<StateId> stack;
  for (StateId s = 0; s < map.cell_count(); ++s) {
    if (!map.passable_id(s) || label[s] >= 0) continue;
    const auto comp = static_cast<std::int32_t>(sizes.size());
    sizes.push_back(0);
    label[s] = comp;
    stack.push_back(s);
    while (!stack.empty()) {
      const StateId c = stack.back();
      stack.pop_back();
      ++sizes.back();
      for (const auto& step : map.neighbors(map.coord(c))) {
        const StateId n = map.id(step.to);
        if (label[n] < 0) {
          label[n] = comp;
          stack.push_back(n);
        }
      }
    }
  }
  std::int32_t largest = -1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (largest < 0 || sizes[i] > sizes[static_cast<std::size_t>(largest)]) largest = static_cast<std::int32_t>(i);
  }
  std::vector<std::uint8_t> cells(map.cell_count(), 0);
  for (StateId s = 0; s < map.cell_count(); ++s) cells[s] = label[s] == largest && largest >= 0 ? 1 : 0;
  return GridMap(map.width(), map.height(), std::move(cells));
}

GridMap random_obstacle_map(std::int32_t width, std::int32_t height, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height);
  const auto threshold = static_cast<std::uint64_t>(density * 1'000'000.0);
  for (auto& c : cells) c = rng.below(1'000'000) >= threshold ? 1 : 0;
  return keep_largest_component(GridMap(width, height, std::move(cells)));
}

GridMap maze_map(std::int32_t width, std::int32_t height, const MazeOptions& options, std::uint64_t seed) {
  const std::int32_t pitch = options.corridor + options.wall;
  if (options.corridor < 1 || options.wall < 1) throw std::invalid_argument("corridor and wall must be >= 1");
  const std::int32_t cols = (width - options.wall) / pitch;
  const std::int32_t rows = (height - options.wall) / pitch;
  if (cols < 1 || rows < 1) throw std::invalid_argument("map too small for the maze lattice");

  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 0);
  auto open_rect = [&](std::int32_t x0, std::int32_t y0, std::int32_t w, std::int32_t h) {
    for (std::int32_t y = y0; y < y0 + h; ++y) {
      for (std::int32_t x = x0; x < x0 + w; ++x) cells[static_cast<std::size_t>(y) * width + x] = 1;
    }
  };
  auto room_x = [&](std::int32_t c) { return options.wall + c * pitch; };
  auto room_y = [&](std::int32_t r) { return options.wall + r * pitch; };
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) open_rect(room_x(c), room_y(r), options.corridor, options.corridor);
  }
  // Opening between lattice cell (c, r) and its east (horizontal) or south neighbor.
  auto open_wall = [&](std::int32_t c, std::int32_t r, bool east) {
    if (east) {
      open_rect(room_x(c) + options.corridor, room_y(r), options.wall, options.corridor);
    } else {
      open_rect(room_x(c), room_y(r) + options.corridor, options.corridor, options.wall);
    }
  };

  Rng rng(seed);
  const auto lattice = static_cast<std::size_t>(cols) * rows;
  std::vector<std::uint8_t> visited(lattice, 0);
  // east_open[i] / south_open[i]: wall segment to the east / south of lattice cell i is carved.
  std::vector<std::uint8_t> east_open(lattice, 0), south_open(lattice, 0);
  std::vector<std::size_t> stack{static_cast<std::size_t>(rng.below(lattice))};
  visited[stack.back()] = 1;
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    const auto c = static_cast<std::int32_t>(cur % cols);
    const auto r = static_cast<std::int32_t>(cur / cols);
    std::size_t options_n = 0;
    std::size_t choices[4];
    if (r > 0 && !visited[cur - cols]) choices[options_n++] = cur - cols;
    if (c + 1 < cols && !visited[cur + 1]) choices[options_n++] = cur + 1;
    if (r + 1 < rows && !visited[cur + cols]) choices[options_n++] = cur + cols;
    if (c > 0 && !visited[cur - 1]) choices[options_n++] = cur - 1;
    if (options_n == 0) {
      stack.pop_back();
      continue;
    }
    const std::size_t next = choices[rng.below(options_n)];
    if (next == cur + 1) east_open[cur] = 1;
    if (next + 1 == cur) east_open[next] = 1;
    if (next == cur + static_cast<std::size_t>(cols)) south_open[cur] = 1;
    if (next + static_cast<std::size_t>(cols) == cur) south_open[next] = 1;
    visited[next] = 1;
    stack.push_back(next);
  }
  const auto braid_threshold = static_cast<std::uint64_t>(options.braid * 1'000'000.0);
  for (std::size_t i = 0; i < lattice; ++i) {
    const auto c = static_cast<std::int32_t>(i % cols);
    const auto r = static_cast<std::int32_t>(i / cols);
    if (c + 1 < cols && !east_open[i] && rng.below(1'000'000) < braid_threshold) east_open[i] = 1;
    if (r + 1 < rows && !south_open[i] && rng.below(1'000'000) < braid_threshold) south_open[i] = 1;
    if (east_open[i]) open_wall(c, r, true);
    if (south_open[i]) open_wall(c, r, false);
  }
  return GridMap(width, height, std::move(cells));
}

}  // namespace knnlrta
