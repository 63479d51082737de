#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tc/lca_index.hpp"
#include "tc/network.hpp"

namespace tc {

/// Minimal vertices u of a MUL-tree such that the subtree at u displays T_v.
/// Always an antichain of at most k vertices.
using MinSet = std::vector<VertexId>;

/// M(l) for every leaf l of `t` whose label occurs in `mul`. Iterates over the
/// smaller of the two structures.
std::unordered_map<VertexId, MinSet> leaf_minsets(const MulTree& mul, const Tree& t);

/// Minima of { lca(u1, u2) : u1 in m1, u2 in m2 } minus m1 and m2.
/// Both inputs must be antichains of the tree indexed by `idx`.
MinSet combine(const LcaIndex& idx, std::span<const VertexId> m1, std::span<const VertexId> m2);

/// Bottom-up DP over T computing M(v) where both children are displayed.
///
/// Storage is sized to T's id space once and reset per run by epoch stamps,
/// so repeated runs against one large T only pay for the vertices they touch.
class MulContainment {
 public:
  /// Randomizes the ready-queue order (results must not depend on it).
  void set_order_seed(std::optional<std::uint64_t> seed) { order_seed_ = seed; }

  /// Runs the DP; `idx` must index `mul`. Returns the maxima (w.r.t. T's
  /// ancestor order) of the vertices v of T such that `mul` displays T_v.
  const std::vector<VertexId>& run(const MulTree& mul, const LcaIndex& idx, const Tree& t);

  /// True when M(v) was computed during the last run (possibly empty).
  bool computed(VertexId tv) const;
  /// M(v) from the last run; empty when not computed.
  std::span<const VertexId> minset(VertexId tv) const;
  /// Vertices whose M was computed in the last run, in computation order.
  const std::vector<VertexId>& computed_vertices() const { return order_; }
  const std::vector<VertexId>& maxima() const { return maxima_; }
  /// Largest |M(v)| seen in the last run.
  std::size_t max_minset_size() const { return max_size_; }

 private:
  bool marked(VertexId tv) const;
  void store(VertexId tv, MinSet set);
  void mark_ready(const Tree& t, VertexId tv);

  std::vector<std::uint32_t> stamp_;
  std::vector<MinSet> sets_;
  std::vector<std::uint32_t> emitted_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> order_;
  std::vector<VertexId> queue_;
  std::vector<VertexId> maxima_;
  std::size_t max_size_ = 0;
  std::size_t k_ = 0;
  std::optional<std::uint64_t> order_seed_;
};

std::vector<VertexId> maximal_displayed(const MulTree& mul, const Tree& t);
bool displays(const MulTree& mul, const Tree& t);

}  // namespace tc
