#include "tc/generator.hpp"

#include <algorithm>

#include "tc/oracle.hpp"
#include "tc/stability.hpp"

namespace tc {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // Reject the low 2^64 mod n values so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % n;
  }
}

std::string to_string(ClassTarget c) {
  switch (c) {
    case ClassTarget::kAny: return "any";
    case ClassTarget::kReticulationVisible: return "reticulation-visible";
    case ClassTarget::kNearlyStable: return "nearly-stable";
    case ClassTarget::kTheorem2: return "stable-tree-vertices";
  }
  return "?";
}

ClassTarget parse_class_target(const std::string& text) {
  if (text == "any") return ClassTarget::kAny;
  if (text == "rv" || text == "reticulation-visible") return ClassTarget::kReticulationVisible;
  if (text == "ns" || text == "nearly-stable") return ClassTarget::kNearlyStable;
  if (text == "t2" || text == "stable-tree-vertices") return ClassTarget::kTheorem2;
  throw std::invalid_argument("unknown network class '" + text + "' (expected any, rv, ns or t2)");
}

namespace {

Tree random_tree(Rng& rng, std::size_t n_leaves) {
  if (n_leaves == 0) throw GeneratorError("a tree needs at least one leaf");
  Tree t;
  std::vector<VertexId> pool;
  pool.reserve(n_leaves);
  for (std::size_t i = 0; i < n_leaves; ++i) pool.push_back(t.add_leaf("t" + std::to_string(i)));
  auto take = [&] {
    std::swap(pool[rng.below(pool.size())], pool.back());
    const VertexId v = pool.back();
    pool.pop_back();
    return v;
  };
  while (pool.size() > 1) {
    const VertexId a = take();
    const VertexId b = take();
    const VertexId p = t.add_vertex();
    t.add_arc(p, a);
    t.add_arc(p, b);
    pool.push_back(p);
  }
  t.set_root(pool.front());
  return t;
}

// Replaces u->v by u->m->v and returns m.
VertexId subdivide(Network& net, VertexId u, VertexId v) {
  const VertexId m = net.add_vertex();
  net.remove_arc(u, v);
  net.add_arc(u, m);
  net.add_arc(m, v);
  return m;
}

// True if `target` is `from` or a descendant of it.
bool reaches(const Network& net, VertexId from, VertexId target) {
  std::vector<char> seen(net.capacity(), 0);
  std::vector<VertexId> stack{from};
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    if (x == target) return true;
    if (seen[index_of(x)]) continue;
    seen[index_of(x)] = 1;
    for (VertexId c : net.children(x)) stack.push_back(c);
  }
  return false;
}

bool meets(const Network& net, ClassTarget target) {
  if (target == ClassTarget::kAny) return true;
  const ClassReport r = classify_detailed(net);
  switch (target) {
    case ClassTarget::kReticulationVisible: return r.reticulation_visible;
    case ClassTarget::kNearlyStable: return r.nearly_stable;
    case ClassTarget::kTheorem2: return r.precondition_holds;
    case ClassTarget::kAny: break;
  }
  return true;
}

Tree compact(const Tree& t) { return extract_subnetwork(t, t.root()); }

}  // namespace

Tree gen_tree(std::uint64_t seed, std::size_t n_leaves) {
  Rng rng(seed);
  return random_tree(rng, n_leaves);
}

Network gen_network(std::uint64_t seed, std::size_t n_leaves, std::size_t n_reticulations, ClassTarget target,
                    std::size_t retry_budget) {
  if (n_reticulations > 0 && n_leaves < 2) throw GeneratorError("reticulations need at least two leaves");
  Rng rng(seed);
  Network net = random_tree(rng, n_leaves);
  std::size_t failures = 0;
  auto fail = [&] {
    if (++failures > retry_budget)
      throw GeneratorError("gave up after " + std::to_string(retry_budget) + " rejected steps generating a " +
                           to_string(target) + " network with " + std::to_string(n_leaves) + " leaves and " +
                           std::to_string(n_reticulations) + " reticulations; try fewer reticulations or class any");
  };

  std::vector<std::pair<VertexId, VertexId>> arcs, leaf_arcs, chain_arcs;
  for (std::size_t added = 0; added < n_reticulations;) {
    arcs.clear();
    leaf_arcs.clear();
    chain_arcs.clear();
    for (VertexId u : net.vertices()) {
      for (VertexId v : net.children(u)) {
        arcs.push_back({u, v});
        if (net.is_leaf(v)) leaf_arcs.push_back({u, v});
        if (net.is_reticulation(u)) chain_arcs.push_back({u, v});
      }
    }
    // Leaf-targeted steps make stable reticulations likely; chain steps grow
    // reticulation paths for the wider classes.
    const std::uint64_t kind = rng.below(target == ClassTarget::kReticulationVisible ? 3 : 4);
    const auto& pool = kind == 3 && !chain_arcs.empty() ? chain_arcs : kind >= 1 ? leaf_arcs : arcs;
    const auto [x, y] = rng.pick(pool);
    const auto [u, v] = rng.pick(arcs);
    if ((u == x && v == y) || reaches(net, y, u)) {
      fail();
      continue;
    }
    Network backup = net;
    const VertexId s = subdivide(net, u, v);
    const VertexId w = subdivide(net, x, y);
    net.add_arc(s, w);
    if (!meets(net, target)) {
      net = std::move(backup);
      fail();
      continue;
    }
    ++added;
  }
  return net;
}

Network gen_layered_rv_network(std::uint64_t seed, std::size_t n_leaves, std::size_t n_reticulations) {
  if (n_reticulations >= std::max<std::size_t>(n_leaves, 1))
    throw GeneratorError("a layered network with " + std::to_string(n_leaves) + " leaves has at most " +
                         std::to_string(n_leaves ? n_leaves - 1 : 0) + " reticulations");
  Rng rng(seed);
  Network net = random_tree(rng, n_leaves);

  // Reverse pre-order visits children before parents.
  std::vector<VertexId> order{net.root()};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (VertexId c : net.children(order[i])) order.push_back(c);
  std::vector<std::size_t> rank(net.capacity());
  std::vector<VertexId> internal;
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[index_of(order[i])] = order.size() - i;
    if (!net.is_leaf(order[i])) internal.push_back(order[i]);
  }
  rng.shuffle(internal);
  internal.resize(n_reticulations);
  std::sort(internal.begin(), internal.end(), [&](VertexId a, VertexId b) { return rank[index_of(a)] < rank[index_of(b)]; });

  for (VertexId z : internal) {
    const auto kids = net.children(z);
    const bool flip = rng.coin();
    const VertexId a = kids[flip ? 1 : 0];
    const VertexId b = kids[flip ? 0 : 1];
    VertexId p = z, q = a;
    while (!net.is_leaf(q) && rng.coin()) {
      const auto below = net.children(q);
      p = q;
      q = below[rng.below(below.size())];
    }
    const VertexId s = subdivide(net, p, q);
    const VertexId w = subdivide(net, z, b);
    net.add_arc(s, w);
  }
  return net;
}

Network gen_chain_network(std::uint64_t seed, std::size_t n_leaves, std::size_t n_chains, std::size_t chain_length) {
  if (n_chains > 0 && (n_leaves < 2 || chain_length == 0))
    throw GeneratorError("chains need at least two leaves and a positive length");
  if (n_chains > n_leaves) throw GeneratorError("more chains than leaves");
  Rng rng(seed);
  Network net = random_tree(rng, n_leaves);
  std::vector<VertexId> leaves = net.leaves();
  rng.shuffle(leaves);
  leaves.resize(n_chains);
  std::vector<char> used(net.capacity(), 0);
  for (VertexId l : leaves) used[index_of(l)] = 1;
  std::vector<VertexId> heads = net.vertices();

  for (VertexId leaf : leaves) {
    VertexId top = leaf;
    for (std::size_t i = 0; i < chain_length; ++i) {
      const VertexId w = subdivide(net, net.parents(top).front(), top);
      // Any arc u->v with u a tree vertex and v neither a reticulation nor a
      // chained leaf lies outside the chain, so s->w closes no cycle.
      VertexId u = kNoVertex, v = kNoVertex;
      for (std::size_t attempt = 0; attempt < 1000 && u == kNoVertex; ++attempt) {
        const VertexId c = rng.pick(heads);
        if (c == net.root() || net.is_reticulation(c) || (index_of(c) < used.size() && used[index_of(c)])) continue;
        const VertexId pc = net.parents(c).front();
        if (net.is_reticulation(pc)) continue;
        u = pc;
        v = c;
      }
      if (u == kNoVertex) throw GeneratorError("no arc available for a reticulation source");
      const VertexId s = subdivide(net, u, v);
      net.add_arc(s, w);
      heads.push_back(s);
      top = w;
    }
  }
  return net;
}

Tree gen_displayed_tree(std::uint64_t seed, const Network& net) {
  Rng rng(seed);
  Resolution res;
  for (VertexId v : net.vertices()) {
    if (!net.is_reticulation(v)) continue;
    const auto up = net.parents(v);
    res[v] = up[rng.below(up.size())];
  }
  return compact(displayed_tree(net, res));
}

namespace {

void swap_two_labels(Rng& rng, Tree& out) {
  const std::vector<VertexId> leaves = out.leaves();
  const std::size_t i = rng.below(leaves.size());
  std::size_t j = rng.below(leaves.size() - 1);
  if (j >= i) ++j;
  const Label a = out.label(leaves[i]);
  const Label b = out.label(leaves[j]);
  out.set_label(leaves[i], b);
  out.set_label(leaves[j], a);
}

// Prunes a random non-root subtree and regrafts it above a vertex outside it,
// other than its old position. Returns false when no such vertex exists.
bool prune_and_regraft(Rng& rng, Tree& out) {
  std::vector<VertexId> candidates;
  for (VertexId v : out.vertices())
    if (v != out.root()) candidates.push_back(v);
  const VertexId x = rng.pick(candidates);
  const VertexId p = out.parents(x).front();
  const VertexId sibling = out.children(p)[0] == x ? out.children(p)[1] : out.children(p)[0];
  out.remove_arc(p, x);
  const VertexId seed_vertex[] = {p};
  normalize(out, seed_vertex);

  std::vector<char> inside(out.capacity(), 0);
  std::vector<VertexId> stack{x};
  while (!stack.empty()) {
    const VertexId y = stack.back();
    stack.pop_back();
    inside[index_of(y)] = 1;
    for (VertexId c : out.children(y)) stack.push_back(c);
  }
  std::vector<VertexId> targets;
  for (VertexId b : out.vertices())
    if (!inside[index_of(b)] && b != sibling) targets.push_back(b);
  if (targets.empty()) return false;
  const VertexId b = rng.pick(targets);
  const VertexId q = out.add_vertex();
  if (b == out.root()) {
    out.add_arc(q, b);
    out.set_root(q);
  } else {
    const VertexId a = out.parents(b).front();
    out.remove_arc(a, b);
    out.add_arc(a, q);
    out.add_arc(q, b);
  }
  out.add_arc(q, x);
  return true;
}

}  // namespace

Tree gen_perturbed_tree(std::uint64_t seed, const Tree& t) {
  if (t.leaves().size() < 4) throw InvalidInput("perturbation needs a tree with at least 4 leaves");
  Rng rng(seed);
  Tree out = compact(t);
  if (!rng.coin()) {
    Tree regrafted = out;
    if (prune_and_regraft(rng, regrafted)) return compact(regrafted);
  }
  swap_two_labels(rng, out);
  return out;
}

}  // namespace tc
