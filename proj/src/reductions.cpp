#include "tc/reductions.hpp"

#include <algorithm>
#include <unordered_set>

namespace tc {

// ---------------------------------------------------------------------------
// Cherry rule

void CherryReducer::push_near(VertexId v) {
  if (!net_.contains(v)) return;
  if (net_.is_leaf(v)) {
    work_.push_back(v);
    return;
  }
  for (VertexId c : net_.children(v))
    if (net_.is_leaf(c)) work_.push_back(c);
}

CherryOutcome CherryReducer::run() {
  for (VertexId v : net_.leaves()) work_.push_back(v);
  return drain();
}

CherryOutcome CherryReducer::run_from(std::span<const VertexId> seeds) {
  for (VertexId v : seeds) push_near(v);
  return drain();
}

CherryOutcome CherryReducer::drain() {
  while (!work_.empty()) {
    const VertexId a = work_.front();
    work_.pop_front();
    if (!net_.contains(a) || !net_.is_leaf(a) || net_.in_degree(a) != 1) continue;
    const VertexId p = net_.parents(a).front();
    if (net_.out_degree(p) != 2) continue;
    const VertexId b = net_.children(p)[0] == a ? net_.children(p)[1] : net_.children(p)[0];
    if (!net_.is_leaf(b)) continue;

    last_ = {net_.label(a), net_.label(b)};
    const VertexId ta = t_.find_leaf(net_.label(a));
    const VertexId tb = t_.find_leaf(net_.label(b));
    if (ta == kNoVertex || tb == kNoVertex)
      throw InvalidInput("network label missing from the tree: " + (ta == kNoVertex ? last_.first : last_.second));
    if (t_.in_degree(ta) != 1 || t_.in_degree(tb) != 1 || t_.parents(ta).front() != t_.parents(tb).front()) {
      work_.clear();
      return CherryOutcome::kRejected;
    }

    if (hooks_ && hooks_->before) hooks_->before(net_, t_);
    const VertexId tp = t_.parents(ta).front();
    t_.remove_vertex(ta);
    const VertexId tseed[] = {tp};
    normalize(t_, tseed);

    net_.remove_vertex(a);
    const VertexId nseed[] = {p};
    const NormalizeResult r = normalize(net_, nseed, observer_);
    ++applications_;
    if (hooks_ && hooks_->after) hooks_->after(net_, t_);

    work_.push_back(b);
    for (VertexId x : r.touched) push_near(x);
  }
  return CherryOutcome::kReduced;
}

CherryOutcome apply_cherry_reductions(Network& net, Tree& t) {
  CherryReducer reducer(net, t);
  return reducer.run();
}

// ---------------------------------------------------------------------------
// Pyramid to MUL-tree

PyramidTree pyramid_to_multree(const Pyramid& p, const Network& net, const ReticulationLeafMap& rmap) {
  PyramidTree out;
  std::vector<std::pair<VertexId, VertexId>> stack;  // (network vertex, copy of its parent)
  stack.push_back({p.rho, kNoVertex});
  while (!stack.empty()) {
    const auto [x, parent_copy] = stack.back();
    stack.pop_back();
    const VertexId cx = out.tree.add_vertex();
    out.origin.push_back(x);
    if (parent_copy != kNoVertex) out.tree.add_arc(parent_copy, cx);
    if (net.is_leaf(x)) {
      out.tree.set_label(cx, net.label(x));
      continue;
    }
    const auto kids = net.children(x);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      const VertexId y = *it;
      if (!net.is_reticulation(y)) {
        stack.push_back({y, cx});
        continue;
      }
      const VertexId leaf = rmap.leaf_of(y);
      if (leaf == kNoVertex || !net.contains(leaf))
        throw std::logic_error("base reticulation " + std::to_string(index_of(y)) + " has no leaf in the leaf map");
      const VertexId copy = out.tree.add_leaf(net.label(leaf));
      out.origin.push_back(leaf);
      out.tree.add_arc(cx, copy);
    }
  }
  out.tree.set_root(vertex_at(0));
  return out;
}

// ---------------------------------------------------------------------------
// Anchoring

Label find_anchor_leaf(const Pyramid& p, const Network& net) {
  for (VertexId x : p.tip)
    if (net.is_leaf(x)) return net.label(x);

  const std::unordered_set<VertexId> tip(p.tip.begin(), p.tip.end());
  std::unordered_set<VertexId> seen;
  std::vector<VertexId> stack;
  for (VertexId leaf : p.foundation) {
    // Every root-leaf path ends with tree vertex -> reticulations -> leaf, so
    // the root is stable on the leaf iff all those entry vertices are in the tip.
    bool inside = true;
    seen.clear();
    stack.assign(net.parents(leaf).begin(), net.parents(leaf).end());
    while (!stack.empty() && inside) {
      const VertexId r = stack.back();
      stack.pop_back();
      if (!seen.insert(r).second) continue;
      for (VertexId q : net.parents(r)) {
        if (net.is_reticulation(q))
          stack.push_back(q);
        else if (!tip.count(q))
          inside = false;
      }
    }
    if (inside) return net.label(leaf);
  }
  throw UnsupportedNetwork("pyramid root " + std::to_string(index_of(p.rho)) +
                               " is not stable on any leaf; the network is outside the supported class",
                           p.rho);
}

VertexId select_anchored_maximum(std::span<const VertexId> maxima, const Tree& t, const Label& c) {
  const std::unordered_set<VertexId> wanted(maxima.begin(), maxima.end());
  VertexId x = t.find_leaf(c);
  while (x != kNoVertex) {
    if (wanted.count(x)) return x;
    x = t.in_degree(x) == 0 ? kNoVertex : t.parents(x).front();
  }
  throw std::logic_error("no maximum is an ancestor of leaf " + c);
}

// ---------------------------------------------------------------------------
// Placement

PlacementResult apply_pyramid_placement(Network& net, Tree& t, const Pyramid& p, VertexId v, LabelFactory& labels,
                                        Decomposition* decomposition) {
  PlacementResult result;
  result.label = labels.next();

  std::vector<VertexId> subtree{v};
  std::unordered_set<Label> placed;
  for (std::size_t i = 0; i < subtree.size(); ++i) {
    const VertexId x = subtree[i];
    if (t.is_leaf(x)) placed.insert(t.label(x));
    for (VertexId c : t.children(x)) subtree.push_back(c);
  }

  const std::unordered_set<VertexId> tip(p.tip.begin(), p.tip.end());
  std::vector<VertexId> seeds;
  for (VertexId x : p.tip) {
    if (!net.is_leaf(x)) continue;
    if (placed.count(net.label(x)))
      ++result.removed_leaves;
    else
      ++result.stray_leaves;
  }

  // Foundation leaves of T_v go together with every reticulation path to them.
  std::vector<VertexId> doomed;
  std::vector<VertexId> stack;
  for (VertexId leaf : p.foundation) {
    if (!net.contains(leaf) || !placed.count(net.label(leaf))) continue;
    doomed.assign(1, leaf);
    stack.assign(net.parents(leaf).begin(), net.parents(leaf).end());
    while (!stack.empty()) {
      const VertexId r = stack.back();
      stack.pop_back();
      if (std::find(doomed.begin(), doomed.end(), r) != doomed.end()) continue;
      doomed.push_back(r);
      for (VertexId q : net.parents(r)) {
        if (net.is_reticulation(q))
          stack.push_back(q);
        else if (!tip.count(q))
          seeds.push_back(q);
      }
    }
    for (VertexId x : doomed) net.remove_vertex(x);
    ++result.removed_leaves;
  }

  for (const auto& [x, y] : p.cross_arcs)
    if (net.contains(y)) seeds.push_back(y);
  for (VertexId x : p.tip) {
    if (x != p.rho) net.remove_vertex(x);
  }
  while (!net.is_leaf(p.rho)) net.remove_arc(p.rho, net.children(p.rho).back());
  net.set_label(p.rho, result.label);

  for (VertexId x : subtree)
    if (x != v) t.remove_vertex(x);
  t.set_label(v, result.label);

  if (decomposition) decomposition->pyramid_collapsed(net, p.rho);
  NormalizeResult cleanup = normalize(net, seeds, decomposition);
  result.touched = std::move(cleanup.touched);
  result.orphans = std::move(cleanup.orphans);
  return result;
}

}  // namespace tc
