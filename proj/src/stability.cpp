#include "tc/stability.hpp"

namespace tc {

std::vector<VertexId> immediate_dominators(const Network& net) {
  const std::vector<VertexId> order = topological_order(net);
  std::vector<VertexId> idom(net.capacity(), kNoVertex);
  std::vector<std::size_t> depth(net.capacity(), 0);
  auto intersect = [&](VertexId a, VertexId b) {
    while (a != b) {
      while (depth[index_of(a)] > depth[index_of(b)]) a = idom[index_of(a)];
      while (depth[index_of(b)] > depth[index_of(a)]) b = idom[index_of(b)];
      if (a != b) {
        a = idom[index_of(a)];
        b = idom[index_of(b)];
      }
    }
    return a;
  };
  // In a DAG every parent precedes its child, so one pass in topological
  // order settles each dominator.
  for (VertexId v : order) {
    const auto up = net.parents(v);
    if (up.empty()) {
      idom[index_of(v)] = v;
      continue;
    }
    VertexId d = up.front();
    for (std::size_t i = 1; i < up.size(); ++i) d = intersect(d, up[i]);
    idom[index_of(v)] = d;
    depth[index_of(v)] = depth[index_of(d)] + 1;
  }
  return idom;
}

std::vector<VertexId> stability_witnesses(const Network& net) {
  const std::vector<VertexId> order = topological_order(net);
  const std::vector<VertexId> idom = immediate_dominators(net);
  std::vector<VertexId> witness(net.capacity(), kNoVertex);
  // v is stable on leaf l iff v dominates l, i.e. l sits in v's dominator subtree.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (net.is_leaf(v) && witness[index_of(v)] == kNoVertex) witness[index_of(v)] = v;
    const VertexId d = idom[index_of(v)];
    if (d != v && witness[index_of(d)] == kNoVertex) witness[index_of(d)] = witness[index_of(v)];
  }
  return witness;
}

std::string to_string(NetworkClass c) {
  switch (c) {
    case NetworkClass::kReticulationVisible:
      return "reticulation-visible";
    case NetworkClass::kNearlyStable:
      return "nearly-stable";
    case NetworkClass::kGeneralOk:
      return "stable-tree-vertices";
    case NetworkClass::kUnsupported:
      return "unsupported";
  }
  return "unknown";
}

ClassReport classify_detailed(const Network& net) {
  const std::vector<VertexId> witness = stability_witnesses(net);
  auto stable = [&](VertexId v) { return witness[index_of(v)] != kNoVertex; };
  ClassReport report;
  report.reticulation_visible = true;
  report.nearly_stable = true;
  report.precondition_holds = true;
  for (VertexId v : net.vertices()) {
    const auto up = net.parents(v);
    if (up.size() >= 2 && !stable(v)) report.reticulation_visible = false;
    if (!stable(v)) {
      for (VertexId p : up)
        if (!stable(p)) report.nearly_stable = false;
    }
    if (up.size() == 1 && net.is_reticulation(up.front()) && !stable(v) && report.precondition_holds) {
      report.precondition_holds = false;
      report.failing_vertex = v;
    }
  }
  if (report.reticulation_visible)
    report.network_class = NetworkClass::kReticulationVisible;
  else if (report.nearly_stable)
    report.network_class = NetworkClass::kNearlyStable;
  else if (report.precondition_holds)
    report.network_class = NetworkClass::kGeneralOk;
  else
    report.network_class = NetworkClass::kUnsupported;
  return report;
}

bool is_reticulation_visible(const Network& net) { return classify_detailed(net).reticulation_visible; }
bool is_nearly_stable(const Network& net) { return classify_detailed(net).nearly_stable; }
bool satisfies_display_precondition(const Network& net) { return classify_detailed(net).precondition_holds; }

}  // namespace tc
