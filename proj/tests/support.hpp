#pragma once

// Independent reference computations used as ground truth by the unit tests.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tc/network.hpp"

namespace tc::testing {

/// Every root-to-leaf path of a small network, as vertex sequences.
inline std::vector<std::vector<VertexId>> all_root_leaf_paths(const Network& net) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> path{net.root()};
  auto walk = [&](auto&& self) -> void {
    const VertexId x = path.back();
    if (net.is_leaf(x)) {
      out.push_back(path);
      return;
    }
    for (VertexId c : net.children(x)) {
      path.push_back(c);
      self(self);
      path.pop_back();
    }
  };
  walk(walk);
  return out;
}

/// v lies on every root path ending at `leaf`.
inline bool brute_stable_on(const std::vector<std::vector<VertexId>>& paths, VertexId v, VertexId leaf) {
  bool any = false;
  for (const auto& p : paths) {
    if (p.back() != leaf) continue;
    any = true;
    if (std::find(p.begin(), p.end(), v) == p.end()) return false;
  }
  return any;
}

inline bool brute_stable(const Network& net, VertexId v) {
  const auto paths = all_root_leaf_paths(net);
  for (VertexId leaf : net.leaves())
    if (brute_stable_on(paths, v, leaf)) return true;
  return false;
}

/// Lowest common ancestor by collecting u's ancestors and walking up from v.
inline VertexId naive_lca(const Network& tree, VertexId u, VertexId v) {
  std::set<VertexId> up;
  for (VertexId x = u;; x = tree.parents(x).front()) {
    up.insert(x);
    if (tree.in_degree(x) == 0) break;
  }
  for (VertexId x = v;; x = tree.parents(x).front()) {
    if (up.count(x)) return x;
    if (tree.in_degree(x) == 0) break;
  }
  return kNoVertex;
}

/// Labels of leaves below v.
inline std::set<Label> cluster(const Network& net, VertexId v) {
  std::set<Label> out;
  std::vector<VertexId> stack{v};
  std::set<VertexId> seen;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    if (net.is_leaf(x)) out.insert(net.label(x));
    for (VertexId c : net.children(x)) stack.push_back(c);
  }
  return out;
}

/// The vertex of a tree whose cluster is exactly `labels`.
inline VertexId vertex_with_cluster(const Network& tree, const std::set<Label>& labels) {
  for (VertexId v : tree.vertices())
    if (cluster(tree, v) == labels) return v;
  return kNoVertex;
}

inline VertexId leaf(const Network& net, const Label& label) { return net.find_leaf(label); }

}  // namespace tc::testing
