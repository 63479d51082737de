#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tc/decomposition.hpp"
#include "tc/network.hpp"

namespace tc {

/// Raised when a pyramid root is not stable on any of its leaves, so the
/// placement rule cannot be applied.
class UnsupportedNetwork : public std::runtime_error {
 public:
  UnsupportedNetwork(const std::string& message, VertexId vertex)
      : std::runtime_error(message), vertex_(vertex) {}
  VertexId vertex() const { return vertex_; }

 private:
  VertexId vertex_;
};

/// Called with the current (network, tree) pair around each rule firing.
using StepHook = std::function<void(const Network&, const Tree&)>;

struct ReductionHooks {
  StepHook before;
  StepHook after;
};

// ---------------------------------------------------------------------------
// Cherry rule

enum class CherryOutcome { kReduced, kRejected };

/// Work-list driver for the cherry rule. A cherry ab of the network is either
/// a cherry of the tree too (a is deleted from both and the tree arc into b is
/// contracted) or the pair is rejected.
class CherryReducer {
 public:
  CherryReducer(Network& net, Tree& t) : net_(net), t_(t) {}

  void set_observer(EditObserver* observer) { observer_ = observer; }
  void set_hooks(const ReductionHooks* hooks) { hooks_ = hooks; }

  /// Examines every leaf of the network.
  CherryOutcome run();
  /// Examines the given vertices (leaves, or parents of leaves) and whatever
  /// the resulting deletions touch.
  CherryOutcome run_from(std::span<const VertexId> seeds);

  std::size_t applications() const { return applications_; }
  /// The (deleted, kept) label pair of the last rejected or applied cherry.
  const std::pair<Label, Label>& last_pair() const { return last_; }

 private:
  void push_near(VertexId v);
  CherryOutcome drain();

  Network& net_;
  Tree& t_;
  EditObserver* observer_ = nullptr;
  const ReductionHooks* hooks_ = nullptr;
  std::deque<VertexId> work_;
  std::size_t applications_ = 0;
  std::pair<Label, Label> last_;
};

/// Applies the cherry rule exhaustively.
CherryOutcome apply_cherry_reductions(Network& net, Tree& t);

// ---------------------------------------------------------------------------
// Pyramid to MUL-tree

/// P' for a pyramid: the tip with every tip-to-base arc xy replaced by a new
/// leaf under x labeled like the leaf below y.
struct PyramidTree {
  MulTree tree;
  /// Network vertex behind each vertex of `tree` (indexed by id): the tip
  /// vertex it copies, or the foundation leaf whose label it carries.
  std::vector<VertexId> origin;
};

/// Throws std::logic_error if a base reticulation is missing from `rmap`.
PyramidTree pyramid_to_multree(const Pyramid& p, const Network& net, const ReticulationLeafMap& rmap);

// ---------------------------------------------------------------------------
// Anchoring and placement

/// Label of a leaf of the pyramid that its root is stable on. Throws
/// UnsupportedNetwork when none exists.
Label find_anchor_leaf(const Pyramid& p, const Network& net);

/// The element of `maxima` that is an ancestor-or-self of the leaf of `t`
/// labeled `c`. Throws std::logic_error if there is none.
VertexId select_anchored_maximum(std::span<const VertexId> maxima, const Tree& t, const Label& c);

/// Issues labels from a namespace that parsed labels cannot use.
class LabelFactory {
 public:
  static constexpr char kPrefix[] = "@n";
  Label next() { return kPrefix + std::to_string(counter_++); }
  static bool is_reserved(const Label& label) { return label.starts_with('@'); }

 private:
  std::uint64_t counter_ = 0;
};

struct PlacementResult {
  Label label;
  /// Network leaves deleted because their label occurs in T_v.
  std::size_t removed_leaves = 0;
  /// Tip leaves whose label is not in T_v. They are deleted as tip vertices,
  /// which makes the tree impossible to display.
  std::size_t stray_leaves = 0;
  /// Surviving vertices whose neighborhood changed during cleanup.
  std::vector<VertexId> touched;
  /// Labeled vertices left without parents by the deletions.
  std::vector<VertexId> orphans;
};

/// Replaces the tip of `p` and T_v by a pair of leaves with a fresh label,
/// deleting network leaves whose label occurs in T_v together with every
/// reticulation path to them, then normalizes. When `decomposition` is given
/// it retires the pyramid root and observes the cleanup.
PlacementResult apply_pyramid_placement(Network& net, Tree& t, const Pyramid& p, VertexId v,
                                        LabelFactory& labels, Decomposition* decomposition = nullptr);

}  // namespace tc
