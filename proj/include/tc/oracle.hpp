#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tc/network.hpp"

namespace tc {

/// Exhaustive deciders used as ground truth by the tests. Exponential time.

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One chosen parent per reticulation.
using Resolution = std::unordered_map<VertexId, VertexId>;

inline constexpr std::size_t kDefaultReticulationBound = 16;

/// Calls `visit` with every resolution of `net` until it returns false.
/// Throws OracleRefusal above `bound` reticulations.
void for_each_resolution(const Network& net, const std::function<bool(const Resolution&)>& visit,
                         std::size_t bound = kDefaultReticulationBound);

/// The tree obtained by keeping only the chosen parent arcs, then deleting
/// unlabeled sinks and suppressing unary vertices.
Tree displayed_tree(const Network& net, const Resolution& resolution);

/// True iff some resolution of `net`, restricted to the labels of `t`, is `t`.
/// Works on any single-source DAG with labeled sinks.
bool oracle_displays(const Network& net, const Tree& t, std::size_t bound = kDefaultReticulationBound);

/// True iff the MUL-tree contains a subdivision of T_v, by trying every
/// assignment of T_v's leaves to equally labeled leaves of `mul`. Throws
/// OracleRefusal when there are more than kMaxAssignments assignments.
bool oracle_subtree_display(const MulTree& mul, const Tree& t, VertexId v);

/// The minimal vertices u of `mul` whose subtree displays T_v, sorted by id.
std::vector<VertexId> oracle_minima(const MulTree& mul, const Tree& t, VertexId v);

inline constexpr std::size_t kMaxAssignments = std::size_t{1} << 20;

}  // namespace tc
