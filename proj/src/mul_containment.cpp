#include "tc/mul_containment.hpp"

#include <algorithm>
#include <stdexcept>

namespace tc {

std::unordered_map<VertexId, MinSet> leaf_minsets(const MulTree& mul, const Tree& t) {
  std::unordered_map<VertexId, MinSet> out;
  if (mul.vertex_count() <= t.vertex_count()) {
    for (VertexId leaf : mul.leaves()) {
      const VertexId tl = t.find_leaf(mul.label(leaf));
      if (tl != kNoVertex) out[tl].push_back(leaf);
    }
  } else {
    for (VertexId tl : t.leaves()) {
      const auto where = mul.vertices_with_label(t.label(tl));
      if (!where.empty()) out[tl].assign(where.begin(), where.end());
    }
  }
  return out;
}

MinSet combine(const LcaIndex& idx, std::span<const VertexId> m1, std::span<const VertexId> m2) {
  MinSet candidates;
  candidates.reserve(m1.size() * m2.size());
  for (VertexId u1 : m1) {
    for (VertexId u2 : m2) {
      const VertexId w = idx.lca(u1, u2);
      // For antichain inputs the lca lies in m1 or m2 exactly when it equals
      // one of its arguments.
      if (w != u1 && w != u2) candidates.push_back(w);
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](VertexId a, VertexId b) { return idx.entry(a) < idx.entry(b); });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Sweep in pre-order; the open intervals on the stack are the ancestors of
  // the current candidate, and only the innermost one needs flagging.
  std::vector<std::size_t> open;
  std::vector<bool> dominated(candidates.size(), false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::uint32_t entry = idx.entry(candidates[i]);
    while (!open.empty() && idx.exit(candidates[open.back()]) < entry) open.pop_back();
    if (!open.empty()) dominated[open.back()] = true;
    open.push_back(i);
  }
  MinSet result;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (!dominated[i]) result.push_back(candidates[i]);
  return result;
}

bool MulContainment::computed(VertexId tv) const {
  return index_of(tv) < stamp_.size() && stamp_[index_of(tv)] == epoch_;
}

bool MulContainment::marked(VertexId tv) const { return computed(tv) && !sets_[index_of(tv)].empty(); }

std::span<const VertexId> MulContainment::minset(VertexId tv) const {
  if (!computed(tv)) return {};
  return sets_[index_of(tv)];
}

void MulContainment::store(VertexId tv, MinSet set) {
  if (set.size() > k_)
    throw std::logic_error("MUL-tree DP produced " + std::to_string(set.size()) + " minima, more than k = " +
                           std::to_string(k_));
  max_size_ = std::max(max_size_, set.size());
  stamp_[index_of(tv)] = epoch_;
  sets_[index_of(tv)] = std::move(set);
  order_.push_back(tv);
}

void MulContainment::mark_ready(const Tree& t, VertexId tv) {
  const auto up = t.parents(tv);
  if (up.empty()) {
    // The whole of T is displayed; it is the only maximum.
    maxima_.assign(1, tv);
    emitted_[index_of(tv)] = epoch_;
    return;
  }
  const VertexId parent = up.front();
  for (VertexId sibling : t.children(parent))
    if (sibling != tv && !marked(sibling)) return;
  queue_.push_back(parent);
}

const std::vector<VertexId>& MulContainment::run(const MulTree& mul, const LcaIndex& idx, const Tree& t) {
  if (stamp_.size() < t.capacity()) {
    stamp_.resize(t.capacity(), 0);
    emitted_.resize(t.capacity(), 0);
    sets_.resize(t.capacity());
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    std::fill(emitted_.begin(), emitted_.end(), 0);
    epoch_ = 1;
  }
  order_.clear();
  queue_.clear();
  maxima_.clear();
  max_size_ = 0;
  k_ = std::max<std::size_t>(1, mul.max_label_multiplicity());

  auto leaves = leaf_minsets(mul, t);
  std::vector<VertexId> marked_leaves;
  marked_leaves.reserve(leaves.size());
  for (const auto& entry : leaves) marked_leaves.push_back(entry.first);
  // Deterministic seeding regardless of hash-map iteration order.
  std::sort(marked_leaves.begin(), marked_leaves.end());
  for (VertexId tl : marked_leaves) {
    store(tl, std::move(leaves.at(tl)));
    mark_ready(t, tl);
  }

  std::uint64_t rng = order_seed_.value_or(0) * 0x9e3779b97f4a7c15ULL + 1;
  std::size_t head = 0;
  while (head < queue_.size()) {
    if (order_seed_) {
      rng ^= rng << 13;
      rng ^= rng >> 7;
      rng ^= rng << 17;
      const std::size_t pick = head + static_cast<std::size_t>(rng % (queue_.size() - head));
      std::swap(queue_[head], queue_[pick]);
    }
    const VertexId v = queue_[head++];
    const auto kids = t.children(v);
    if (kids.size() != 2) throw InvalidInput("MUL-tree DP expects a binary tree T");
    store(v, combine(idx, sets_[index_of(kids[0])], sets_[index_of(kids[1])]));
    if (sets_[index_of(v)].empty()) {
      for (VertexId c : kids) {
        maxima_.push_back(c);
        emitted_[index_of(c)] = epoch_;
      }
    } else {
      mark_ready(t, v);
    }
  }

  // Marked vertices whose sibling never became marked are maxima as well; the
  // queue discipline alone does not reach them.
  for (VertexId v : order_) {
    if (!marked(v) || emitted_[index_of(v)] == epoch_) continue;
    const auto up = t.parents(v);
    if (up.empty() || !marked(up.front())) {
      maxima_.push_back(v);
      emitted_[index_of(v)] = epoch_;
    }
  }
  return maxima_;
}

std::vector<VertexId> maximal_displayed(const MulTree& mul, const Tree& t) {
  const LcaIndex idx(mul);
  MulContainment dp;
  return dp.run(mul, idx, t);
}

bool displays(const MulTree& mul, const Tree& t) {
  const std::vector<VertexId> maxima = maximal_displayed(mul, t);
  return maxima.size() == 1 && maxima.front() == t.root();
}

}  // namespace tc
