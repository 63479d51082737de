#include "tc/oracle.hpp"

#include <algorithm>
#include <string>

namespace tc {

namespace {

// Fixed-width bitsets over a label universe, one row per vertex.
class ClusterTable {
 public:
  ClusterTable(std::size_t bits, std::size_t rows) : words_((bits + 63) / 64), data_(words_ * rows, 0) {}

  std::uint64_t* row(std::size_t i) { return data_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return data_.data() + i * words_; }
  void clear() { std::fill(data_.begin(), data_.end(), 0); }
  void set_bit(std::size_t i, std::size_t bit) { row(i)[bit / 64] |= std::uint64_t{1} << (bit % 64); }
  void merge_into(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) row(dst)[w] |= row(src)[w];
  }
  bool empty(std::size_t i) const {
    return std::all_of(row(i), row(i) + words_, [](std::uint64_t x) { return x == 0; });
  }
  std::vector<std::uint64_t> copy(std::size_t i) const { return {row(i), row(i) + words_}; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

using ClusterSet = std::vector<std::vector<std::uint64_t>>;

void normalize_set(ClusterSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// Clusters of the tree below `root`, over the leaf numbering in `bit_of`.
ClusterSet tree_clusters(const Tree& t, VertexId root, const std::unordered_map<Label, std::size_t>& bit_of) {
  std::vector<VertexId> order{root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (VertexId c : t.children(order[i])) order.push_back(c);
  ClusterTable table(bit_of.size(), t.capacity());
  ClusterSet out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t i = index_of(*it);
    if (t.is_leaf(*it)) table.set_bit(i, bit_of.at(t.label(*it)));
    for (VertexId c : t.children(*it)) table.merge_into(i, index_of(c));
    out.push_back(table.copy(i));
  }
  normalize_set(out);
  return out;
}

std::vector<VertexId> subtree_leaves(const Tree& t, VertexId v) {
  std::vector<VertexId> stack{v}, leaves;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    if (t.is_leaf(x)) leaves.push_back(x);
    for (VertexId c : t.children(x)) stack.push_back(c);
  }
  return leaves;
}

}  // namespace

void for_each_resolution(const Network& net, const std::function<bool(const Resolution&)>& visit,
                         std::size_t bound) {
  std::vector<VertexId> rets;
  for (VertexId v : net.vertices())
    if (net.is_reticulation(v)) rets.push_back(v);
  if (rets.size() > bound)
    throw OracleRefusal("network has " + std::to_string(rets.size()) + " reticulations; the oracle bound is " +
                        std::to_string(bound));
  std::vector<std::size_t> digit(rets.size(), 0);
  Resolution res;
  while (true) {
    for (std::size_t i = 0; i < rets.size(); ++i) res[rets[i]] = net.parents(rets[i])[digit[i]];
    if (!visit(res)) return;
    std::size_t i = 0;
    while (i < rets.size() && ++digit[i] == net.in_degree(rets[i])) digit[i++] = 0;
    if (i == rets.size()) return;
  }
}

Tree displayed_tree(const Network& net, const Resolution& resolution) {
  Network copy = net;
  std::vector<VertexId> seeds;
  for (const auto& [r, chosen] : resolution) {
    const std::vector<VertexId> parents(copy.parents(r).begin(), copy.parents(r).end());
    for (VertexId p : parents) {
      if (p == chosen) continue;
      copy.remove_arc(p, r);
      seeds.push_back(p);
    }
    seeds.push_back(r);
  }
  normalize(copy, seeds);
  return copy;
}

bool oracle_displays(const Network& net, const Tree& t, std::size_t bound) {
  std::unordered_map<Label, std::size_t> bit_of;
  for (VertexId leaf : t.leaves()) bit_of.emplace(t.label(leaf), bit_of.size());
  for (const auto& [label, bit] : bit_of)
    if (net.vertices_with_label(label).empty()) return false;
  const ClusterSet target = tree_clusters(t, t.root(), bit_of);

  const std::vector<VertexId> order = topological_order(net);
  std::vector<VertexId> rets;
  for (VertexId v : order)
    if (net.is_reticulation(v)) rets.push_back(v);
  if (rets.size() > bound)
    throw OracleRefusal("network has " + std::to_string(rets.size()) + " reticulations; the oracle bound is " +
                        std::to_string(bound));

  std::vector<VertexId> chosen(net.capacity(), kNoVertex);
  std::vector<std::size_t> digit(rets.size(), 0);
  std::vector<char> reach(net.capacity());
  ClusterTable table(bit_of.size(), net.capacity());
  ClusterSet found;
  auto active = [&](VertexId from, VertexId to) {
    return !net.is_reticulation(to) || chosen[index_of(to)] == from;
  };
  while (true) {
    for (std::size_t i = 0; i < rets.size(); ++i) chosen[index_of(rets[i])] = net.parents(rets[i])[digit[i]];

    std::fill(reach.begin(), reach.end(), 0);
    reach[index_of(net.root())] = 1;
    for (VertexId v : order) {
      if (!reach[index_of(v)]) continue;
      for (VertexId c : net.children(v))
        if (active(v, c)) reach[index_of(c)] = 1;
    }
    table.clear();
    found.clear();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId v = *it;
      if (!reach[index_of(v)]) continue;
      if (net.has_label(v)) {
        auto bit = bit_of.find(net.label(v));
        if (bit != bit_of.end()) table.set_bit(index_of(v), bit->second);
      }
      for (VertexId c : net.children(v))
        if (active(v, c)) table.merge_into(index_of(v), index_of(c));
      if (!table.empty(index_of(v))) found.push_back(table.copy(index_of(v)));
    }
    normalize_set(found);
    if (found == target) return true;

    std::size_t i = 0;
    while (i < rets.size() && ++digit[i] == net.in_degree(rets[i])) digit[i++] = 0;
    if (i == rets.size()) return false;
  }
}

namespace {

// Calls `visit(lca)` for every assignment of T_v's leaves to mul leaves that
// realizes T_v; stops early when `visit` returns false.
void for_each_embedding(const MulTree& mul, const Tree& t, VertexId v, const std::function<bool(VertexId)>& visit) {
  const std::vector<VertexId> leaves = subtree_leaves(t, v);
  std::unordered_map<Label, std::size_t> bit_of;
  std::vector<std::span<const VertexId>> options;
  std::size_t total = 1;
  for (VertexId leaf : leaves) {
    bit_of.emplace(t.label(leaf), bit_of.size());
    options.push_back(mul.vertices_with_label(t.label(leaf)));
    if (options.back().empty()) return;
    total *= options.back().size();
    if (total > kMaxAssignments) throw OracleRefusal("too many leaf assignments for the exhaustive search");
  }
  const ClusterSet target = tree_clusters(t, v, bit_of);
  const std::vector<VertexId> order = topological_order(mul);

  std::vector<std::size_t> digit(leaves.size(), 0);
  std::vector<std::size_t> bit_at(mul.capacity(), SIZE_MAX);
  ClusterTable table(leaves.size(), mul.capacity());
  ClusterSet found;
  std::vector<std::uint64_t> full((leaves.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < leaves.size(); ++i) full[i / 64] |= std::uint64_t{1} << (i % 64);
  while (true) {
    for (std::size_t i = 0; i < leaves.size(); ++i) bit_at[index_of(options[i][digit[i]])] = i;
    table.clear();
    found.clear();
    VertexId lca = kNoVertex;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t x = index_of(*it);
      if (bit_at[x] != SIZE_MAX) table.set_bit(x, bit_at[x]);
      for (VertexId c : mul.children(*it)) table.merge_into(x, index_of(c));
      if (table.empty(x)) continue;
      found.push_back(table.copy(x));
      if (lca == kNoVertex && found.back() == full) lca = *it;
    }
    for (std::size_t i = 0; i < leaves.size(); ++i) bit_at[index_of(options[i][digit[i]])] = SIZE_MAX;
    normalize_set(found);
    if (found == target && !visit(lca)) return;

    std::size_t i = 0;
    while (i < leaves.size() && ++digit[i] == options[i].size()) digit[i++] = 0;
    if (i == leaves.size()) return;
  }
}

}  // namespace

bool oracle_subtree_display(const MulTree& mul, const Tree& t, VertexId v) {
  bool any = false;
  for_each_embedding(mul, t, v, [&](VertexId) {
    any = true;
    return false;
  });
  return any;
}

std::vector<VertexId> oracle_minima(const MulTree& mul, const Tree& t, VertexId v) {
  std::vector<VertexId> roots;
  for_each_embedding(mul, t, v, [&](VertexId lca) {
    roots.push_back(lca);
    return true;
  });
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<VertexId> minima;
  for (VertexId u : roots) {
    const bool has_lower =
        std::any_of(roots.begin(), roots.end(), [&](VertexId w) { return w != u && is_ancestor(mul, w, u); });
    if (!has_lower) minima.push_back(u);
  }
  return minima;
}

}  // namespace tc
