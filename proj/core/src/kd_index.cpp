#include "knnlrta/kd_index.hpp"

#include <algorithm>
#include <queue>

namespace knnlrta {
namespace {

thread_local std::size_t g_last_visited = 0;

bool match_less(const RecordMatch& a, const RecordMatch& b) {
  if (a.similarity != b.similarity) return a.similarity < b.similarity;
  return a.record < b.record;
}

std::int32_t clamp_to(std::int32_t v, std::int32_t lo, std::int32_t hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

Cost box_lower_bound(Coord s, Coord goal, const KdPoint& lo, const KdPoint& hi) {
  const Coord near_start{clamp_to(s.x, lo[0], hi[0]), clamp_to(s.y, lo[1], hi[1])};
  const Coord near_end{clamp_to(goal.x, lo[2], hi[2]), clamp_to(goal.y, lo[3], hi[3])};
  return std::max(octile_h(s, near_start), octile_h(goal, near_end));
}

KdIndex KdIndex::build(std::vector<KdEntry> entries) {
  KdIndex index;
  index.nodes_.reserve(entries.size());
  index.root_ = index.build_range(entries, 0, entries.size(), 0);
  return index;
}

std::int32_t KdIndex::build_range(std::vector<KdEntry>& entries, std::size_t lo, std::size_t hi, std::size_t depth) {
  if (lo >= hi) return -1;
  const auto dim = static_cast<std::uint8_t>(depth % 4);
  const auto first = entries.begin() + static_cast<std::ptrdiff_t>(lo);
  const auto last = entries.begin() + static_cast<std::ptrdiff_t>(hi);
  std::sort(first, last, [dim](const KdEntry& a, const KdEntry& b) {
    if (a.point[dim] != b.point[dim]) return a.point[dim] < b.point[dim];
    return a.record < b.record;
  });
  // Take the median, then slide right past equal values so the right subtree is strictly greater.
  std::size_t mid = lo + (hi - lo) / 2;
  while (mid + 1 < hi && entries[mid + 1].point[dim] == entries[mid].point[dim]) ++mid;

  Node node;
  node.entry = entries[mid];
  node.dim = dim;
  node.lo = node.hi = node.entry.point;
  for (std::size_t i = lo; i < hi; ++i) {
    for (std::size_t d = 0; d < 4; ++d) {
      node.lo[d] = std::min(node.lo[d], entries[i].point[d]);
      node.hi[d] = std::max(node.hi[d], entries[i].point[d]);
    }
  }
  const auto slot = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  const std::int32_t left = build_range(entries, lo, mid, depth + 1);
  const std::int32_t right = build_range(entries, mid + 1, hi, depth + 1);
  nodes_[static_cast<std::size_t>(slot)].left = left;
  nodes_[static_cast<std::size_t>(slot)].right = right;
  return slot;
}

std::vector<RecordMatch> KdIndex::nearest(Coord s, Coord goal, std::size_t m) const {
  g_last_visited = 0;
  std::vector<RecordMatch> out;
  if (m == 0 || nodes_.empty()) return out;

  // Max-heap on (similarity, record): the top is the worst match kept so far.
  std::priority_queue<RecordMatch, std::vector<RecordMatch>, decltype(&match_less)> best(&match_less);
  auto visit = [&](auto&& self, std::int32_t at) -> void {
    if (at < 0) return;
    const Node& node = nodes_[static_cast<std::size_t>(at)];
    if (best.size() == m && box_lower_bound(s, goal, node.lo, node.hi) > best.top().similarity) return;
    ++g_last_visited;
    const RecordMatch here{node.entry.record,
                           endpoint_similarity(s, goal, Coord{node.entry.point[0], node.entry.point[1]},
                                               Coord{node.entry.point[2], node.entry.point[3]})};
    if (best.size() < m) {
      best.push(here);
    } else if (match_less(here, best.top())) {
      best.pop();
      best.push(here);
    }
    std::int32_t first = node.left;
    std::int32_t second = node.right;
    if (first >= 0 && second >= 0) {
      const auto& l = nodes_[static_cast<std::size_t>(first)];
      const auto& r = nodes_[static_cast<std::size_t>(second)];
      if (box_lower_bound(s, goal, r.lo, r.hi) < box_lower_bound(s, goal, l.lo, l.hi)) std::swap(first, second);
    }
    self(self, first);
    self(self, second);
  };
  visit(visit, root_);

  out.reserve(best.size());
  while (!best.empty()) {
    out.push_back(best.top());
    best.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<bool> KdIndex::descent(const KdPoint& p) const {
  std::vector<bool> turns;
  std::int32_t at = root_;
  while (at >= 0) {
    const Node& node = nodes_[static_cast<std::size_t>(at)];
    const bool right = p[node.dim] > node.entry.point[node.dim];
    turns.push_back(right);
    at = right ? node.right : node.left;
  }
  return turns;
}

std::size_t KdIndex::last_visited() { return g_last_visited; }

KdIndex build_index(std::span<const SubgoalRecord> records) {
  std::vector<KdEntry> entries;
  entries.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    entries.push_back(KdEntry{endpoints_of(records[i]), static_cast<std::uint32_t>(i)});
  }
  return KdIndex::build(std::move(entries));
}

std::vector<RecordMatch> linear_scan_nearest(std::span<const SubgoalRecord> records, Coord s, Coord goal,
                                             std::size_t m) {
  std::vector<RecordMatch> all;
  all.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    all.push_back(RecordMatch{static_cast<std::uint32_t>(i),
                              endpoint_similarity(s, goal, records[i].start(), records[i].end())});
  }
  const std::size_t k = std::min(m, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), match_less);
  all.resize(k);
  return all;
}

}  // namespace knnlrta
