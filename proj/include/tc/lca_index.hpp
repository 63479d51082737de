#pragma once

#include <cstdint>
#include <vector>

#include "tc/network.hpp"

namespace tc {

/// Constant-time lowest-common-ancestor and ancestor queries on a fixed tree.
///
/// Euler tour + sparse table over depths. Any mutation of the indexed tree
/// invalidates the index; queries on ids the tree did not contain at build
/// time throw StaleVertex.
class LcaIndex {
 public:
  LcaIndex() = default;
  /// Throws InvalidInput if `tree` has a reticulation or no root.
  explicit LcaIndex(const Network& tree);

  VertexId lca(VertexId u, VertexId v) const;
  /// u <= v: v is an ancestor of u or equal to it.
  bool is_ancestor(VertexId u, VertexId v) const {
    return entry(v) <= entry(u) && exit(u) <= exit(v);
  }

  /// Pre-order entry number, and the largest entry number inside the subtree.
  std::uint32_t entry(VertexId v) const { return slot(v).entry; }
  std::uint32_t exit(VertexId v) const { return slot(v).exit; }
  std::uint32_t depth(VertexId v) const { return slot(v).depth; }

  std::size_t euler_size() const { return euler_.size(); }
  VertexId root() const { return root_; }

 private:
  struct Slot {
    std::uint32_t entry = 0;
    std::uint32_t exit = 0;
    std::uint32_t depth = 0;
    std::uint32_t first = 0;
    bool present = false;
  };

  const Slot& slot(VertexId v) const {
    if (index_of(v) >= slots_.size() || !slots_[index_of(v)].present) throw StaleVertex(v);
    return slots_[index_of(v)];
  }
  std::uint32_t shallower(std::uint32_t a, std::uint32_t b) const {
    return slots_[index_of(euler_[a])].depth <= slots_[index_of(euler_[b])].depth ? a : b;
  }

  VertexId root_ = kNoVertex;
  std::vector<Slot> slots_;
  std::vector<VertexId> euler_;
  // table_[j][i]: position of the shallowest vertex in euler_[i, i + 2^j).
  std::vector<std::vector<std::uint32_t>> table_;
};

}  // namespace tc
