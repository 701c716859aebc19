#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "knnlrta/kd_index.hpp"
#include "knnlrta/record.hpp"
#include "knnlrta/search.hpp"

namespace knnlrta {

/// N compressed records for one map plus a kd-index over their endpoints. Immutable and
/// shareable between agents once constructed.
class SubgoalDatabase {
 public:
  SubgoalDatabase() = default;
  SubgoalDatabase(std::int32_t width, std::int32_t height, std::vector<SubgoalRecord> records);

  std::int32_t width() const { return width_; }
  std::int32_t height() const { return height_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<SubgoalRecord>& records() const { return records_; }
  const SubgoalRecord& record(std::size_t i) const { return records_[i]; }
  const KdIndex& index() const { return index_; }
  /// Total states stored over all records.
  std::size_t stored_states() const { return stored_states_; }

  friend bool operator==(const SubgoalDatabase& a, const SubgoalDatabase& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.records_ == b.records_;
  }

 private:
  std::int32_t width_ = 0;
  std::int32_t height_ = 0;
  std::vector<SubgoalRecord> records_;
  KdIndex index_;
  std::size_t stored_states_ = 0;
};

/// Compresses an optimal path into the states that are pairwise hill-climbing reachable in
/// sequence, choosing each next state by binary search for the farthest reachable index.
/// Reachability is checked uncapped under the octile heuristic. Requires |p| >= 2.
SubgoalRecord compress(const GridMap& map, const Path& p);

class DatabaseBuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  std::size_t records = 0;
  std::size_t min_len = 3;  // minimum source path length in states
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t redraw_limit = 1'000'000;
};

struct BuildSummary {
  std::size_t source_path_states = 0;  // sum of |p| over all source paths
  std::uint64_t draws = 0;
};

/// Record r is built from its own random substream keyed by (seed, r), so the result does
/// not depend on `threads`. Throws DatabaseBuildError when one record needs more than
/// `redraw_limit` draws.
SubgoalDatabase build_database(const GridMap& map, const BuildOptions& options, BuildSummary* summary = nullptr);

inline SubgoalDatabase build_database(const GridMap& map, std::size_t n, std::size_t min_len, std::uint64_t seed) {
  return build_database(map, BuildOptions{n, min_len, seed});
}

struct ValidationIssue {
  std::size_t record = 0;
  std::string message;
};

/// Full invariant sweep: size, passability, uncapped hill-climbing reachability of every
/// consecutive pair, and that the chain lies in order on an optimal path between its ends.
std::vector<ValidationIssue> validate_database(const GridMap& map, const SubgoalDatabase& db);

// Binary layout, little-endian, no padding:
//   "KNNSDB1" 0x01 | u32 width | u32 height | u32 N | N x (u32 k | k x u32 id), id = y * width + x
class DatabaseFormatError : public std::runtime_error {
 public:
  enum class Kind { BadMagic, BadVersion, DimensionMismatch, Truncated, StateOutOfBounds, InvalidRecord, TrailingData };
  DatabaseFormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

void save_database(const SubgoalDatabase& db, std::ostream& out);
std::vector<std::uint8_t> serialize_database(const SubgoalDatabase& db);
SubgoalDatabase load_database(std::istream& in, const GridMap& map);
SubgoalDatabase deserialize_database(const std::vector<std::uint8_t>& bytes, const GridMap& map);

void save_database_file(const SubgoalDatabase& db, const std::string& path);
SubgoalDatabase load_database_file(const std::string& path, const GridMap& map);

}  // namespace knnlrta
