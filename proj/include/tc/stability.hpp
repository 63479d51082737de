#pragma once

#include <string>
#include <vector>

#include "tc/network.hpp"

namespace tc {

/// Immediate dominators of every vertex of a single-source DAG, indexed by
/// vertex id (kNoVertex for dead ids; the root maps to itself).
std::vector<VertexId> immediate_dominators(const Network& net);

/// For every vertex v, a leaf that v is stable on (v lies on every root-leaf
/// path), or kNoVertex when v is unstable. Indexed by vertex id.
std::vector<VertexId> stability_witnesses(const Network& net);

enum class NetworkClass {
  kReticulationVisible,
  kNearlyStable,
  /// Neither named class, but every tree vertex with a reticulation parent is stable.
  kGeneralOk,
  kUnsupported,
};

std::string to_string(NetworkClass c);

struct ClassReport {
  NetworkClass network_class = NetworkClass::kUnsupported;
  bool reticulation_visible = false;
  bool nearly_stable = false;
  bool precondition_holds = false;
  /// First unstable tree vertex with a reticulation parent when the precondition fails.
  VertexId failing_vertex = kNoVertex;
};

ClassReport classify_detailed(const Network& net);
inline NetworkClass classify(const Network& net) { return classify_detailed(net).network_class; }

bool is_reticulation_visible(const Network& net);
bool is_nearly_stable(const Network& net);
/// Every tree vertex with a reticulation parent is stable on some leaf.
bool satisfies_display_precondition(const Network& net);

}  // namespace tc
