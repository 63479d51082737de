#include "tc/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace tc {

// ---------------------------------------------------------------------------
// ReticulationLeafMap

ReticulationLeafMap::ReticulationLeafMap(const Network& net)
    : role_(net.capacity(), false), leaf_(net.capacity(), kNoVertex) {
  for (VertexId v : net.vertices())
    if (net.is_reticulation(v)) role_[index_of(v)] = true;
}

void ReticulationLeafMap::assign(VertexId r, VertexId leaf) {
  if (!is_reticulation(r)) throw std::logic_error("leaf map: vertex " + std::to_string(index_of(r)) + " is not a reticulation");
  VertexId& slot = leaf_[index_of(r)];
  if (slot != kNoVertex && slot != leaf)
    throw std::logic_error("leaf map: reticulation " + std::to_string(index_of(r)) + " already maps to another leaf");
  slot = leaf;
}

void ReticulationLeafMap::propagate(const Network& net, VertexId r, VertexId leaf) {
  std::vector<VertexId> stack{r};
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    if (!is_reticulation(x) || leaf_[index_of(x)] == leaf) continue;
    assign(x, leaf);
    for (VertexId p : net.parents(x))
      if (is_reticulation(p)) stack.push_back(p);
  }
}

std::size_t ReticulationLeafMap::mapped_count() const {
  return static_cast<std::size_t>(std::count_if(leaf_.begin(), leaf_.end(), [](VertexId v) { return v != kNoVertex; }));
}

ReticulationLeafMap build_reticulation_leaf_map(const Network& net) {
  ReticulationLeafMap map(net);
  // Bottom-up from each leaf through reticulations until a tree vertex.
  for (VertexId leaf : net.leaves())
    for (VertexId p : net.parents(leaf))
      if (map.is_reticulation(p)) map.propagate(net, p, leaf);
  return map;
}

// ---------------------------------------------------------------------------
// ComponentDag

std::vector<VertexId> ComponentDag::roots() const {
  std::vector<VertexId> out;
  for (const Node& n : nodes_)
    if (n.alive) out.push_back(n.root);
  return out;
}

std::vector<VertexId> ComponentDag::successors(VertexId rho) const {
  const int n = node_at(rho);
  if (n < 0) throw std::invalid_argument("not a component-DAG vertex: " + std::to_string(index_of(rho)));
  std::vector<VertexId> out;
  for (int s : nodes_[n].succ) out.push_back(nodes_[s].root);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ComponentDag::out_degree(VertexId rho) const {
  const int n = node_at(rho);
  if (n < 0) throw std::invalid_argument("not a component-DAG vertex: " + std::to_string(index_of(rho)));
  return nodes_[n].succ.size();
}

std::uint32_t ComponentDag::find(std::uint32_t x) const {
  std::uint32_t r = x;
  while (uf_[r] != r) r = uf_[r];
  while (uf_[x] != r) {
    const std::uint32_t next = uf_[x];
    uf_[x] = r;
    x = next;
  }
  return r;
}

int ComponentDag::node_of_member(VertexId v) const {
  if (index_of(v) >= uf_.size()) return -1;
  const int n = node_of_rep_[find(static_cast<std::uint32_t>(index_of(v)))];
  return n >= 0 && nodes_[n].alive ? n : -1;
}

VertexId ComponentDag::component_root(VertexId v) const {
  const int n = node_of_member(v);
  return n < 0 ? kNoVertex : nodes_[n].root;
}

void ComponentDag::link(int from, int to) {
  nodes_[from].succ.insert(to);
  nodes_[to].pred.insert(from);
}

void ComponentDag::unlink(int from, int to) {
  nodes_[from].succ.erase(to);
  nodes_[to].pred.erase(from);
}

void ComponentDag::enqueue_if_leaf(int node) {
  Node& n = nodes_[node];
  if (n.alive && n.succ.empty() && !n.handed_out) ready_.push_back(node);
}

void ComponentDag::kill(int node) {
  Node& n = nodes_[node];
  n.alive = false;
  n.succ.clear();
  n.pred.clear();
  node_at_root_[index_of(n.root)] = -1;
  --live_;
}

void ComponentDag::set_order_seed(std::optional<std::uint64_t> seed) {
  order_seed_ = seed;
  rng_state_ = seed.value_or(0) * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
}

std::optional<VertexId> ComponentDag::next_leaf() {
  while (!ready_.empty()) {
    if (order_seed_ && ready_.size() > 1) {
      rng_state_ ^= rng_state_ << 13;
      rng_state_ ^= rng_state_ >> 7;
      rng_state_ ^= rng_state_ << 17;
      std::swap(ready_.front(), ready_[static_cast<std::size_t>(rng_state_ % ready_.size())]);
    }
    const int id = ready_.front();
    ready_.pop_front();
    Node& n = nodes_[id];
    if (!n.alive || n.handed_out || !n.succ.empty()) continue;
    n.handed_out = true;
    return n.root;
  }
  return std::nullopt;
}

void ComponentDag::retire(VertexId rho) {
  const int id = node_at(rho);
  if (id < 0 || !nodes_[id].succ.empty())
    throw std::invalid_argument("retire: vertex " + std::to_string(index_of(rho)) + " is not a leaf of the component DAG");
  const std::vector<int> preds(nodes_[id].pred.begin(), nodes_[id].pred.end());
  for (int b : preds) unlink(b, id);
  kill(id);
  for (int b : preds) enqueue_if_leaf(b);
}

void ComponentDag::rename_root(VertexId old_root, VertexId new_root) {
  const int id = node_at(old_root);
  if (id < 0) throw std::logic_error("rename_root: unknown component root");
  node_at_root_[index_of(old_root)] = -1;
  node_at_root_[index_of(new_root)] = id;
  nodes_[id].root = new_root;
}

void ComponentDag::dissolve(VertexId rho) {
  const int id = node_at(rho);
  if (id < 0) throw std::logic_error("dissolve: unknown component root");
  const std::vector<int> preds(nodes_[id].pred.begin(), nodes_[id].pred.end());
  const std::vector<int> succs(nodes_[id].succ.begin(), nodes_[id].succ.end());
  for (int b : preds) unlink(b, id);
  for (int d : succs) unlink(id, d);
  for (int b : preds)
    for (int d : succs) link(b, d);
  kill(id);
  for (int b : preds) enqueue_if_leaf(b);
}

void ComponentDag::merge(VertexId lower_root, VertexId upper_member) {
  const int z = node_at(lower_root);
  const int c = node_of_member(upper_member);
  if (z < 0 || c < 0 || z == c) throw std::logic_error("merge: components not found");
  unlink(c, z);
  const std::vector<int> preds(nodes_[z].pred.begin(), nodes_[z].pred.end());
  const std::vector<int> succs(nodes_[z].succ.begin(), nodes_[z].succ.end());
  for (int d : succs) {
    unlink(z, d);
    link(c, d);
  }
  for (int b : preds) {
    unlink(b, z);
    link(b, c);
  }
  const std::uint32_t rz = find(static_cast<std::uint32_t>(index_of(lower_root)));
  const std::uint32_t rc = find(static_cast<std::uint32_t>(index_of(upper_member)));
  uf_[rz] = rc;
  node_of_rep_[rc] = c;
  kill(z);
  enqueue_if_leaf(c);
}

std::string ComponentDag::diff(const ComponentDag& other) const {
  std::string out;
  std::vector<VertexId> mine = roots();
  std::vector<VertexId> theirs = other.roots();
  std::sort(mine.begin(), mine.end());
  std::sort(theirs.begin(), theirs.end());
  if (mine != theirs) return "component roots differ (" + std::to_string(mine.size()) + " vs " +
                             std::to_string(theirs.size()) + ")";
  for (VertexId r : mine)
    if (successors(r) != other.successors(r))
      out += "successors of " + std::to_string(index_of(r)) + " differ; ";
  return out;
}

ComponentDag build_component_dag(const Network& net) {
  ComponentDag q;
  const std::size_t cap = net.capacity();
  q.uf_.resize(cap);
  for (std::size_t i = 0; i < cap; ++i) q.uf_[i] = static_cast<std::uint32_t>(i);
  q.node_of_rep_.assign(cap, -1);
  q.node_at_root_.assign(cap, -1);

  auto is_component_root = [&](VertexId v) {
    if (net.is_reticulation(v) || net.is_leaf(v)) return false;
    const auto up = net.parents(v);
    return up.empty() || net.is_reticulation(up.front());
  };

  std::vector<std::pair<int, VertexId>> cross;  // (component, reticulation child)
  std::vector<VertexId> stack;
  for (VertexId v : net.vertices()) {
    if (!is_component_root(v)) continue;
    const int id = static_cast<int>(q.nodes_.size());
    q.nodes_.push_back({});
    q.nodes_.back().root = v;
    q.node_at_root_[index_of(v)] = id;
    q.node_of_rep_[index_of(v)] = id;
    ++q.live_;
    stack.assign(1, v);
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (VertexId c : net.children(x)) {
        if (net.is_reticulation(c)) {
          cross.push_back({id, c});
        } else {
          q.uf_[index_of(c)] = static_cast<std::uint32_t>(index_of(v));
          stack.push_back(c);
        }
      }
    }
  }

  // Reticulations have a single child, so each reticulation path ends at a
  // unique tree vertex; memoize it.
  std::vector<VertexId> chain_end(cap, kNoVertex);
  std::vector<VertexId> path;
  for (auto [id, y] : cross) {
    path.clear();
    VertexId x = y;
    while (net.is_reticulation(x) && chain_end[index_of(x)] == kNoVertex) {
      path.push_back(x);
      x = net.children(x).front();
    }
    const VertexId end = net.is_reticulation(x) ? chain_end[index_of(x)] : x;
    for (VertexId r : path) chain_end[index_of(r)] = end;
    if (!net.is_leaf(end)) q.link(id, q.node_at(end));
  }
  for (int id = 0; id < static_cast<int>(q.nodes_.size()); ++id) q.enqueue_if_leaf(id);
  return q;
}

// ---------------------------------------------------------------------------
// Pyramids

Pyramid materialize_pyramid(const Network& net, VertexId rho) {
  net.check(rho);
  Pyramid p;
  p.rho = rho;
  std::unordered_set<VertexId> seen;
  std::vector<VertexId> stack{rho};
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    p.tip.push_back(x);
    for (VertexId c : net.children(x)) {
      if (!net.is_reticulation(c)) {
        stack.push_back(c);
        continue;
      }
      p.cross_arcs.push_back({x, c});
      VertexId r = c;
      while (net.is_reticulation(r)) {
        if (!seen.insert(r).second) break;
        p.base.push_back(r);
        r = net.children(r).front();
      }
      if (net.is_reticulation(r)) continue;
      if (!net.is_leaf(r))
        throw std::logic_error("vertex " + std::to_string(index_of(r)) +
                               " below a base reticulation is not a leaf; rho is not a leaf of the component DAG");
      if (seen.insert(r).second) p.foundation.push_back(r);
    }
  }
  return p;
}

Pyramid pop_pyramid(ComponentDag& q, const Network& net) {
  const std::optional<VertexId> rho = q.next_leaf();
  if (!rho) throw std::out_of_range("component DAG has no ready leaf");
  return materialize_pyramid(net, *rho);
}

// ---------------------------------------------------------------------------
// Decomposition

Decomposition::Decomposition(const Network& net)
    : dag_(build_component_dag(net)), leaf_map_(build_reticulation_leaf_map(net)) {}

std::optional<Pyramid> Decomposition::next_pyramid(const Network& net) {
  const std::optional<VertexId> rho = dag_.next_leaf();
  if (!rho) return std::nullopt;
  return materialize_pyramid(net, *rho);
}

void Decomposition::pyramid_collapsed(const Network& net, VertexId rho) {
  dag_.retire(rho);
  for (VertexId p : net.parents(rho))
    if (leaf_map_.is_reticulation(p)) leaf_map_.propagate(net, p, rho);
}

void Decomposition::vertex_suppressed(const Network& net, VertexId v, VertexId parent, VertexId child) {
  const bool child_is_inner_tree_vertex = !leaf_map_.is_reticulation(child) && !net.is_leaf(child);
  if (leaf_map_.is_reticulation(v)) {
    // A reticulation reduced to one parent: a tree component hanging below it
    // joins the component of that parent.
    if (parent != kNoVertex && !leaf_map_.is_reticulation(parent) && child_is_inner_tree_vertex &&
        dag_.contains(child))
      dag_.merge(child, parent);
    return;
  }
  const bool was_root = parent == kNoVertex || leaf_map_.is_reticulation(parent);
  if (!was_root || !dag_.contains(v)) return;
  if (child_is_inner_tree_vertex) {
    dag_.rename_root(v, child);
    return;
  }
  dag_.dissolve(v);
  if (parent == kNoVertex) return;
  const VertexId leaf = net.is_leaf(child) ? child : leaf_map_.leaf_of(child);
  if (leaf != kNoVertex) leaf_map_.propagate(net, parent, leaf);
}

void Decomposition::sink_removed(const Network&, VertexId v, std::span<const VertexId> former_parents) {
  if (leaf_map_.is_reticulation(v)) return;
  const bool was_root = former_parents.empty() || leaf_map_.is_reticulation(former_parents.front());
  if (was_root && dag_.contains(v)) dag_.dissolve(v);
}

void Decomposition::orphan_removed(const Network&, VertexId v, std::span<const VertexId>) {
  if (!leaf_map_.is_reticulation(v) && dag_.contains(v)) dag_.dissolve(v);
}

void Decomposition::orphan_found(const Network&, VertexId) { ++orphans_; }

std::string Decomposition::check_consistency(const Network& net) const {
  std::string out = dag_.diff(build_component_dag(net));
  const ReticulationLeafMap fresh = build_reticulation_leaf_map(net);
  for (VertexId v : net.vertices()) {
    if (!net.is_reticulation(v)) continue;
    if (fresh.leaf_of(v) != leaf_map_.leaf_of(v))
      out += "leaf map differs at reticulation " + std::to_string(index_of(v)) + "; ";
  }
  return out;
}

}  // namespace tc
