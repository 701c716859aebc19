#pragma once

#include <cstdint>
#include <random>

#include "knnlrta/grid.hpp"

namespace knnlrta {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard, but the distributions are not, so
// bounded draws are done here to keep results identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent stream for item `index` of a run seeded with `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  Coord coord(const GridMap& map) {
    const auto s = static_cast<StateId>(below(map.cell_count()));
    return map.coord(s);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace knnlrta
