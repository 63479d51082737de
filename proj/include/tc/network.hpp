#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tc {

/// Opaque vertex handle. Ids are never reused by the structure that issued them.
enum class VertexId : std::uint32_t {};

inline constexpr VertexId kNoVertex{std::numeric_limits<std::uint32_t>::max()};

constexpr std::size_t index_of(VertexId v) { return static_cast<std::size_t>(v); }
constexpr VertexId vertex_at(std::size_t i) { return VertexId{static_cast<std::uint32_t>(i)}; }

/// Leaf labels are plain strings. An empty string means "unlabeled".
using Label = std::string;

/// Raised when an operation receives an id that was deleted or never issued.
class StaleVertex : public std::out_of_range {
 public:
  explicit StaleVertex(VertexId v);
  VertexId vertex() const { return vertex_; }

 private:
  VertexId vertex_;
};

/// Raised for inputs the algorithms refuse (mismatched label sets, invalid structure).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mutable rooted DAG with labeled sinks.
///
/// The container accepts any shape; the binary/phylogenetic invariants are
/// checked by validate(). Trees and multi-labeled trees are networks without
/// reticulations (see the Tree and MulTree aliases).
class Network {
 public:
  Network() = default;

  VertexId add_vertex();
  VertexId add_leaf(Label label);
  void add_arc(VertexId from, VertexId to);
  /// Removes one occurrence of the arc; throws if absent.
  void remove_arc(VertexId from, VertexId to);
  bool has_arc(VertexId from, VertexId to) const;
  /// Deletes v together with all incident arcs and its label.
  void remove_vertex(VertexId v);

  void set_label(VertexId v, Label label);
  void clear_label(VertexId v);

  bool contains(VertexId v) const {
    return index_of(v) < alive_.size() && alive_[index_of(v)];
  }
  /// Throws StaleVertex unless v is alive.
  void check(VertexId v) const {
    if (!contains(v)) throw StaleVertex(v);
  }

  std::span<const VertexId> children(VertexId v) const;
  std::span<const VertexId> parents(VertexId v) const;
  std::size_t in_degree(VertexId v) const { return parents(v).size(); }
  std::size_t out_degree(VertexId v) const { return children(v).size(); }

  bool is_leaf(VertexId v) const { return out_degree(v) == 0; }
  bool is_reticulation(VertexId v) const { return in_degree(v) >= 2; }
  bool is_tree_vertex(VertexId v) const { return in_degree(v) <= 1; }

  bool has_label(VertexId v) const { return !label(v).empty(); }
  const Label& label(VertexId v) const;

  VertexId root() const { return root_; }
  void set_root(VertexId v);

  /// Any leaf carrying `label`, or kNoVertex.
  VertexId find_leaf(const Label& label) const;
  std::span<const VertexId> vertices_with_label(const Label& label) const;
  const std::unordered_map<Label, std::vector<VertexId>>& label_index() const { return label_index_; }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t arc_count() const { return arc_count_; }
  /// Upper bound (exclusive) on the index of any id issued so far.
  std::size_t capacity() const { return alive_.size(); }
  std::vector<VertexId> vertices() const;
  std::vector<VertexId> leaves() const;

  std::size_t reticulation_count() const;
  bool is_tree() const { return reticulation_count() == 0; }
  /// Largest number of vertices sharing one label (the k of a k-labeled tree).
  std::size_t max_label_multiplicity() const;

 private:
  std::vector<std::vector<VertexId>> children_;
  std::vector<std::vector<VertexId>> parents_;
  std::vector<Label> labels_;
  std::vector<bool> alive_;
  std::unordered_map<Label, std::vector<VertexId>> label_index_;
  VertexId root_ = kNoVertex;
  std::size_t vertex_count_ = 0;
  std::size_t arc_count_ = 0;
};

/// A network without reticulations whose labels occur once each.
using Tree = Network;
/// A network without reticulations whose labels may repeat.
using MulTree = Network;

// ---------------------------------------------------------------------------
// Validation

enum class IssueKind {
  kEmpty,
  kNoSource,
  kMultipleSources,
  kRootMismatch,
  kCycle,
  kDegreeViolation,
  kUnlabeledSink,
  kLabeledInternal,
  kReticulationLeaf,
  kDuplicateLabel,
  kReticulationInTree,
};

struct Issue {
  IssueKind kind;
  VertexId vertex = kNoVertex;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  bool has(IssueKind kind) const;
  /// All messages joined by "; ".
  std::string summary() const;
};

struct ValidationOptions {
  bool allow_multilabel = false;
  bool require_tree = false;
};

ValidationReport validate(const Network& net, ValidationOptions options = {});
inline ValidationReport validate_tree(const Tree& t) { return validate(t, {.require_tree = true}); }
inline ValidationReport validate_multree(const MulTree& t) {
  return validate(t, {.allow_multilabel = true, .require_tree = true});
}

// ---------------------------------------------------------------------------
// Queries

/// u <= v in a tree: v is an ancestor of u or equal to it. Walks parent
/// pointers; use LcaIndex for repeated constant-time queries.
bool is_ancestor(const Network& tree, VertexId u, VertexId v);

/// Vertices in an order where every parent precedes its children.
/// Throws InvalidInput on a cycle.
std::vector<VertexId> topological_order(const Network& net);

/// Copy of N_v (all descendants of v with the arcs among them). `origin`, when
/// given, receives the source id of every vertex of the copy.
Network extract_subnetwork(const Network& net, VertexId v, std::vector<VertexId>* origin = nullptr);

/// Sorted list of leaf labels.
std::vector<Label> leaf_labels(const Network& net);

// ---------------------------------------------------------------------------
// Edits

/// Receives structural events from normalize(). The default does nothing.
class EditObserver {
 public:
  virtual ~EditObserver() = default;
  /// v was spliced out; `parent` is kNoVertex when v was the root.
  virtual void vertex_suppressed(const Network& /*net*/, VertexId /*v*/, VertexId /*parent*/, VertexId /*child*/) {}
  /// An unlabeled sink was deleted.
  virtual void sink_removed(const Network& /*net*/, VertexId /*v*/, std::span<const VertexId> /*former_parents*/) {}
  /// An unlabeled vertex other than the root lost all of its parents and was deleted.
  virtual void orphan_removed(const Network& /*net*/, VertexId /*v*/, std::span<const VertexId> /*former_children*/) {}
  /// A labeled vertex other than the root lost all of its parents.
  virtual void orphan_found(const Network& /*net*/, VertexId /*v*/) {}
};

struct NormalizeResult {
  /// Surviving vertices whose neighborhood changed.
  std::vector<VertexId> touched;
  /// Labeled vertices left without parents (the root excepted).
  std::vector<VertexId> orphans;
};

/// Restores the binary invariants around `seeds`: deletes unlabeled sinks and
/// unlabeled parentless vertices other than the root, suppresses unlabeled
/// degree-(1,1) vertices and a unary root, and collapses the parallel arcs
/// this creates. Runs until no seed or affected neighbor
/// needs work.
NormalizeResult normalize(Network& net, std::span<const VertexId> seeds, EditObserver* observer = nullptr);

/// Splices out v (indegree 1 and outdegree 1, or a root with one child), then
/// normalizes the endpoints. Throws std::invalid_argument for any other degree.
void suppress_degree_two(Network& net, VertexId v, EditObserver* observer = nullptr);

}  // namespace tc
