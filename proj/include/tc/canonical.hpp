#pragma once

#include <cstdint>
#include <string>

#include "tc/network.hpp"

namespace tc {

/// Newick string of a tree with children ordered by their smallest leaf
/// label. Two leaf-labeled trees are isomorphic iff their forms are equal.
std::string canonical_newick(const Tree& tree);
std::string canonical_newick(const Tree& tree, VertexId subtree_root);

/// Order-independent structural hash of a network (leaf labels and
/// reticulation flags included).
std::uint64_t structural_hash(const Network& net);

/// Leaf-label-preserving isomorphism test for networks. Builds a candidate
/// vertex mapping from structural hashes and verifies it arc by arc, so a
/// `true` answer is always backed by an explicit isomorphism.
bool isomorphic(const Network& a, const Network& b);

}  // namespace tc
