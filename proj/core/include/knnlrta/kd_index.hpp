#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "knnlrta/record.hpp"

namespace knnlrta {

// (x_start, y_start, x_end, y_end)
using KdPoint = std::array<std::int32_t, 4>;

struct KdEntry {
  KdPoint point;
  std::uint32_t record = 0;
};

struct RecordMatch {
  std::uint32_t record = 0;
  Cost similarity = 0;
  friend bool operator==(const RecordMatch&, const RecordMatch&) = default;
};

inline KdPoint endpoints_of(const SubgoalRecord& r) { return {r.start().x, r.start().y, r.end().x, r.end().y}; }

/// Static 4-d kd-tree over record endpoints. Split dimension cycles x_start, y_start,
/// x_end, y_end with depth; left subtrees hold values <= the node's, right subtrees values >.
class KdIndex {
 public:
  struct Node {
    KdEntry entry;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint8_t dim = 0;
    KdPoint lo{};  // bounding box of the subtree rooted here
    KdPoint hi{};
  };

  KdIndex() = default;

  /// Median-split batch build. Median ties go to the left subtree; equal coordinates are
  /// ordered by record id. Deterministic.
  static KdIndex build(std::vector<KdEntry> entries);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::int32_t root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  /// The min(M, N) most similar records to (s, goal), ascending by (similarity, record id).
  /// Identical to a sorted linear scan.
  std::vector<RecordMatch> nearest(Coord s, Coord goal, std::size_t m) const;

  /// Left (false) / right (true) turns an insertion of `p` would take from the root.
  std::vector<bool> descent(const KdPoint& p) const;

  /// Number of nodes visited by the most recent nearest() call on this thread.
  static std::size_t last_visited();

 private:
  std::int32_t build_range(std::vector<KdEntry>& entries, std::size_t lo, std::size_t hi, std::size_t depth);

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

KdIndex build_index(std::span<const SubgoalRecord> records);

/// Lower bound on endpoint_similarity for any record whose endpoints lie inside [lo, hi].
Cost box_lower_bound(Coord s, Coord goal, const KdPoint& lo, const KdPoint& hi);

/// Reference ordering: score every record and sort by (similarity, record id).
std::vector<RecordMatch> linear_scan_nearest(std::span<const SubgoalRecord> records, Coord s, Coord goal,
                                             std::size_t m);

}  // namespace knnlrta
