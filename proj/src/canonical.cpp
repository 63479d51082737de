#include "tc/canonical.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace tc {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::uint64_t> vertex_hashes(const Network& net) {
  const std::vector<VertexId> order = topological_order(net);
  std::vector<std::uint64_t> h(net.capacity(), 0);
  std::vector<std::uint64_t> kids;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    std::uint64_t value = net.is_reticulation(v) ? 0x5eedULL : 0x7ee5ULL;
    if (net.is_leaf(v)) value = mix(value ^ std::hash<std::string>{}(net.label(v)));
    kids.clear();
    for (VertexId c : net.children(v)) kids.push_back(h[index_of(c)]);
    std::sort(kids.begin(), kids.end());
    for (std::uint64_t k : kids) value = mix(value * 31 + k);
    h[index_of(v)] = value;
  }
  return h;
}

}  // namespace

std::string canonical_newick(const Tree& tree, VertexId subtree_root) {
  tree.check(subtree_root);
  // Post-order over an explicit stack; each vertex gets (min label, text).
  std::vector<std::pair<std::string, std::string>> form(tree.capacity());
  std::vector<std::pair<VertexId, bool>> stack{{subtree_root, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    const auto kids = tree.children(v);
    if (kids.empty()) {
      form[index_of(v)] = {tree.label(v), tree.label(v)};
      continue;
    }
    if (!expanded) {
      stack.push_back({v, true});
      for (VertexId c : kids) stack.push_back({c, false});
      continue;
    }
    std::vector<std::pair<std::string, std::string>*> parts;
    for (VertexId c : kids) parts.push_back(&form[index_of(c)]);
    std::sort(parts.begin(), parts.end(), [](auto* a, auto* b) { return *a < *b; });
    std::string text = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) text += ',';
      text += parts[i]->second;
    }
    text += ')';
    form[index_of(v)] = {parts.front()->first, std::move(text)};
    for (VertexId c : kids) form[index_of(c)] = {};
  }
  return form[index_of(subtree_root)].second;
}

std::string canonical_newick(const Tree& tree) {
  if (tree.root() == kNoVertex) return "";
  return canonical_newick(tree, tree.root());
}

std::uint64_t structural_hash(const Network& net) {
  if (net.root() == kNoVertex) return 0;
  return vertex_hashes(net)[index_of(net.root())];
}

bool isomorphic(const Network& a, const Network& b) {
  if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count()) return false;
  if (a.root() == kNoVertex || b.root() == kNoVertex) return a.root() == b.root();
  const std::vector<std::uint64_t> ha = vertex_hashes(a);
  const std::vector<std::uint64_t> hb = vertex_hashes(b);
  if (ha[index_of(a.root())] != hb[index_of(b.root())]) return false;

  std::vector<VertexId> to_b(a.capacity(), kNoVertex);
  std::vector<VertexId> to_a(b.capacity(), kNoVertex);
  std::vector<std::pair<VertexId, VertexId>> work{{a.root(), b.root()}};
  to_b[index_of(a.root())] = b.root();
  to_a[index_of(b.root())] = a.root();
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    std::vector<VertexId> ka(a.children(x).begin(), a.children(x).end());
    std::vector<VertexId> kb(b.children(y).begin(), b.children(y).end());
    if (ka.size() != kb.size()) return false;
    std::sort(ka.begin(), ka.end(), [&](VertexId p, VertexId q) { return ha[index_of(p)] < ha[index_of(q)]; });
    std::sort(kb.begin(), kb.end(), [&](VertexId p, VertexId q) { return hb[index_of(p)] < hb[index_of(q)]; });
    for (std::size_t i = 0; i < ka.size(); ++i) {
      if (ha[index_of(ka[i])] != hb[index_of(kb[i])]) return false;
      VertexId& fwd = to_b[index_of(ka[i])];
      if (fwd == kNoVertex) {
        // A child may already be claimed through another parent; reuse an
        // equal-hash sibling slot in that case.
        if (to_a[index_of(kb[i])] != kNoVertex) {
          std::size_t j = i + 1;
          while (j < kb.size() && (hb[index_of(kb[j])] != hb[index_of(kb[i])] || to_a[index_of(kb[j])] != kNoVertex))
            ++j;
          if (j == kb.size()) return false;
          std::swap(kb[i], kb[j]);
        }
        fwd = kb[i];
        to_a[index_of(kb[i])] = ka[i];
        work.push_back({ka[i], kb[i]});
      } else if (fwd != kb[i]) {
        // Already mapped elsewhere: find the matching slot among equal hashes.
        auto it = std::find(kb.begin() + static_cast<std::ptrdiff_t>(i), kb.end(), fwd);
        if (it == kb.end()) return false;
        std::iter_swap(kb.begin() + static_cast<std::ptrdiff_t>(i), it);
      }
    }
  }
  // Verify the mapping is a label-preserving isomorphism.
  for (VertexId v : a.vertices()) {
    const VertexId w = to_b[index_of(v)];
    if (w == kNoVertex || !b.contains(w)) return false;
    if (a.label(v) != b.label(w)) return false;
    for (VertexId c : a.children(v))
      if (!b.has_arc(w, to_b[index_of(c)])) return false;
  }
  return true;
}

}  // namespace tc
