#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tc/network.hpp"

namespace tc {

/// A leaf of the component DAG together with everything below it.
///
/// tip: tree vertices of the component rooted at rho (rho first), including
/// leaves hanging directly from it. base: reticulations below rho.
/// foundation: leaves below those reticulations.
struct Pyramid {
  VertexId rho = kNoVertex;
  std::vector<VertexId> tip;
  std::vector<VertexId> base;
  std::vector<VertexId> foundation;
  /// Arcs from a tip vertex into the base.
  std::vector<std::pair<VertexId, VertexId>> cross_arcs;
};

/// For each reticulation with a reticulation path to a leaf, that leaf.
///
/// Entries are assigned once and never change while the reticulation lives.
/// Which vertices count as reticulations is fixed when the map is built:
/// a reticulation that has lost a parent keeps that role until it is
/// suppressed.
class ReticulationLeafMap {
 public:
  ReticulationLeafMap() = default;
  explicit ReticulationLeafMap(const Network& net);

  bool is_reticulation(VertexId v) const { return index_of(v) < role_.size() && role_[index_of(v)]; }
  bool mapped(VertexId r) const { return leaf_of(r) != kNoVertex; }
  VertexId leaf_of(VertexId r) const {
    return index_of(r) < leaf_.size() ? leaf_[index_of(r)] : kNoVertex;
  }
  /// Throws std::logic_error when r already maps to a different leaf.
  void assign(VertexId r, VertexId leaf);
  /// Maps r and every reticulation reaching r through reticulations only.
  void propagate(const Network& net, VertexId r, VertexId leaf);
  std::size_t mapped_count() const;

 private:
  std::vector<bool> role_;
  std::vector<VertexId> leaf_;
};

ReticulationLeafMap build_reticulation_leaf_map(const Network& net);

/// The DAG Q on roots of non-trivial tree components, with immediate
/// successor arcs (component C -> D when a reticulation path leads from a
/// vertex of C to the root of D) and a queue of the current Q-leaves.
class ComponentDag {
 public:
  ComponentDag() = default;

  std::size_t size() const { return live_; }
  bool empty() const { return live_ == 0; }
  bool contains(VertexId rho) const { return node_at(rho) >= 0; }
  std::vector<VertexId> roots() const;
  std::vector<VertexId> successors(VertexId rho) const;
  std::size_t out_degree(VertexId rho) const;
  bool is_leaf(VertexId rho) const { return contains(rho) && out_degree(rho) == 0; }
  /// Root of the live component containing tree vertex v, or kNoVertex.
  VertexId component_root(VertexId v) const;

  /// Picks the next Q-leaf not yet handed out: FIFO by default, uniformly at
  /// random among the ready leaves when an order seed is set. The vertex stays
  /// in Q until retire().
  std::optional<VertexId> next_leaf();
  void set_order_seed(std::optional<std::uint64_t> seed);

  /// Removes Q-leaf rho; predecessors left without successors become leaves.
  /// Throws std::invalid_argument if rho is not a Q-leaf.
  void retire(VertexId rho);

  // Maintenance under the edit patterns of the reductions.
  void rename_root(VertexId old_root, VertexId new_root);
  /// Removes rho, connecting its predecessors to its successors.
  void dissolve(VertexId rho);
  /// Folds the component rooted at `lower_root` into the component that
  /// contains tree vertex `upper_member`.
  void merge(VertexId lower_root, VertexId upper_member);

  /// Differences against `other` (empty when equal), for consistency checks.
  std::string diff(const ComponentDag& other) const;

 private:
  friend ComponentDag build_component_dag(const Network& net);

  struct Node {
    VertexId root = kNoVertex;
    bool alive = true;
    bool handed_out = false;
    std::unordered_set<int> succ;
    std::unordered_set<int> pred;
  };

  int node_at(VertexId rho) const {
    return index_of(rho) < node_at_root_.size() ? node_at_root_[index_of(rho)] : -1;
  }
  int node_of_member(VertexId v) const;
  std::uint32_t find(std::uint32_t x) const;
  void link(int from, int to);
  void unlink(int from, int to);
  void enqueue_if_leaf(int node);
  void kill(int node);

  std::vector<Node> nodes_;
  std::vector<int> node_at_root_;
  // Union-find over vertex indices; each set's representative owns a node.
  mutable std::vector<std::uint32_t> uf_;
  std::vector<int> node_of_rep_;
  std::deque<int> ready_;
  std::size_t live_ = 0;
  std::optional<std::uint64_t> order_seed_;
  std::uint64_t rng_state_ = 0;
};

/// Builds Q for a network that is reduced w.r.t. the cherry rule.
ComponentDag build_component_dag(const Network& net);

/// Materializes the pyramid below the next Q-leaf. Throws std::out_of_range if
/// Q has no ready leaf, std::logic_error if a tree vertex below a base
/// reticulation is not a leaf.
Pyramid pop_pyramid(ComponentDag& q, const Network& net);
Pyramid materialize_pyramid(const Network& net, VertexId rho);

/// Marks the component of rho as consumed. Same as q.retire(rho).
inline void retire_component(ComponentDag& q, VertexId rho) { q.retire(rho); }

/// Engine-side bookkeeping: Q plus the reticulation-leaf map, kept current
/// by listening to the edits that normalize() performs.
class Decomposition : public EditObserver {
 public:
  explicit Decomposition(const Network& net);

  ComponentDag& dag() { return dag_; }
  const ComponentDag& dag() const { return dag_; }
  const ReticulationLeafMap& leaf_map() const { return leaf_map_; }

  /// The pyramid below the next Q-leaf, or nullopt when no leaf is ready.
  std::optional<Pyramid> next_pyramid(const Network& net);

  /// rho has just been turned into a labeled leaf by pyramid placement.
  void pyramid_collapsed(const Network& net, VertexId rho);

  void vertex_suppressed(const Network& net, VertexId v, VertexId parent, VertexId child) override;
  void sink_removed(const Network& net, VertexId v, std::span<const VertexId> former_parents) override;
  void orphan_removed(const Network& net, VertexId v, std::span<const VertexId> former_children) override;
  void orphan_found(const Network& net, VertexId v) override;

  std::size_t orphan_count() const { return orphans_; }

  /// Rebuilds Q and the leaf map from scratch and reports any mismatch.
  std::string check_consistency(const Network& net) const;

 private:
  ComponentDag dag_;
  ReticulationLeafMap leaf_map_;
  std::size_t orphans_ = 0;
};

}  // namespace tc
