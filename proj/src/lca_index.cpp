#include "tc/lca_index.hpp"

#include <bit>
#include <utility>

namespace tc {

LcaIndex::LcaIndex(const Network& tree) : root_(tree.root()), slots_(tree.capacity()) {
  if (root_ == kNoVertex) throw InvalidInput("cannot index an empty tree");
  euler_.reserve(2 * tree.vertex_count());
  std::uint32_t counter = 0;
  std::vector<std::pair<VertexId, std::size_t>> stack{{root_, 0}};
  slots_[index_of(root_)] = {counter++, 0, 0, 0, true};
  euler_.push_back(root_);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto kids = tree.children(v);
    if (next == kids.size()) {
      slots_[index_of(v)].exit = counter - 1;
      stack.pop_back();
      if (!stack.empty()) euler_.push_back(stack.back().first);
      continue;
    }
    const VertexId c = kids[next++];
    if (tree.in_degree(c) != 1) throw InvalidInput("LcaIndex requires a tree (vertex with several parents found)");
    Slot& s = slots_[index_of(c)];
    if (s.present) throw InvalidInput("LcaIndex requires a tree (vertex reached twice)");
    s = {counter++, 0, slots_[index_of(v)].depth + 1, static_cast<std::uint32_t>(euler_.size()), true};
    euler_.push_back(c);
    stack.push_back({c, 0});
  }

  const std::size_t n = euler_.size();
  table_.emplace_back(n);
  for (std::uint32_t i = 0; i < n; ++i) table_[0][i] = i;
  for (std::size_t j = 1; (std::size_t{1} << j) <= n; ++j) {
    const std::size_t half = std::size_t{1} << (j - 1);
    const std::vector<std::uint32_t>& prev = table_[j - 1];
    std::vector<std::uint32_t> row(n - (std::size_t{1} << j) + 1);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = shallower(prev[i], prev[i + half]);
    table_.push_back(std::move(row));
  }
}

VertexId LcaIndex::lca(VertexId u, VertexId v) const {
  std::uint32_t a = slot(u).first;
  std::uint32_t b = slot(v).first;
  if (a > b) std::swap(a, b);
  const unsigned j = std::bit_width(static_cast<unsigned>(b - a + 1)) - 1;
  return euler_[shallower(table_[j][a], table_[j][b + 1 - (1u << j)])];
}

}  // namespace tc
