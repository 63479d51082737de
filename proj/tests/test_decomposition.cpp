#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tc/decomposition.hpp"
#include "tc/engine.hpp"
#include "tc/generator.hpp"
#include "tc/newick.hpp"
#include "tc/reductions.hpp"

using namespace tc;

namespace {

VertexId parent_of(const Network& net, const Label& label) { return net.parents(net.find_leaf(label)).front(); }

std::set<VertexId> as_set(const std::vector<VertexId>& v) { return {v.begin(), v.end()}; }

// Root -> {A, B}, A -> C, B -> C.
const char* kDiamond = "((((u1,((c1,c2))#H3))#H1,((u2,#H3))#H2),(#H1,#H2));";

}  // namespace

TEST_CASE("a tree has a single component that is its own leaf") {
  const Tree t = parse_tree("((a,b),(c,d));");
  ComponentDag q = build_component_dag(t);
  CHECK(q.size() == 1);
  CHECK(q.roots() == std::vector<VertexId>{t.root()});
  CHECK(q.is_leaf(t.root()));
  const Pyramid p = pop_pyramid(q, t);
  CHECK(p.rho == t.root());
  CHECK(p.tip.size() == t.vertex_count());
  CHECK(p.base.empty());
  CHECK(p.foundation.empty());
  retire_component(q, p.rho);
  CHECK(q.empty());
  CHECK_THROWS_AS(pop_pyramid(q, t), std::out_of_range);
}

TEST_CASE("one-reticulation network") {
  const Network net = parse_network("((a,(b)#H1),(#H1,c));");
  const ComponentDag q = build_component_dag(net);
  CHECK(q.size() == 1);
  CHECK(q.is_leaf(net.root()));

  const Pyramid p = materialize_pyramid(net, net.root());
  const VertexId h = parent_of(net, "b");
  CHECK(p.tip.front() == net.root());
  CHECK(as_set(p.tip) == std::set<VertexId>{net.root(), parent_of(net, "a"), parent_of(net, "c"), net.find_leaf("a"),
                                            net.find_leaf("c")});
  CHECK(p.base == std::vector<VertexId>{h});
  CHECK(p.foundation == std::vector<VertexId>{net.find_leaf("b")});
  CHECK(p.cross_arcs.size() == 2);

  const ReticulationLeafMap rmap = build_reticulation_leaf_map(net);
  CHECK(rmap.leaf_of(h) == net.find_leaf("b"));
  CHECK(rmap.is_reticulation(h));
  CHECK_FALSE(rmap.is_reticulation(net.root()));
}

TEST_CASE("two stacked components form a path") {
  const Network net = parse_network("((a,((c,d))#H1),(#H1,e));");
  ComponentDag q = build_component_dag(net);
  const VertexId lower = parent_of(net, "c");
  CHECK(q.size() == 2);
  CHECK(q.successors(net.root()) == std::vector<VertexId>{lower});
  CHECK(q.is_leaf(lower));
  CHECK_FALSE(q.is_leaf(net.root()));
  CHECK(q.component_root(parent_of(net, "a")) == net.root());
  CHECK(q.component_root(lower) == lower);
  CHECK_THROWS_AS(q.retire(net.root()), std::invalid_argument);

  CHECK(q.next_leaf() == lower);
  CHECK_FALSE(q.next_leaf().has_value());
  q.retire(lower);
  CHECK(q.is_leaf(net.root()));
  CHECK(q.next_leaf() == net.root());

  const ReticulationLeafMap rmap = build_reticulation_leaf_map(net);
  CHECK_FALSE(rmap.mapped(net.parents(lower).front()));
}

TEST_CASE("a reticulation chain maps to its leaf") {
  const Network net = parse_network("((a,((b)#H2)#H1),(#H1,(c,#H2)));");
  REQUIRE(validate(net).ok());
  const VertexId h2 = parent_of(net, "b");
  const VertexId h1 = net.parents(h2).front() == parent_of(net, "c") ? net.parents(h2)[1] : net.parents(h2).front();
  REQUIRE(net.is_reticulation(h1));
  const ReticulationLeafMap rmap = build_reticulation_leaf_map(net);
  CHECK(rmap.leaf_of(h1) == net.find_leaf("b"));
  CHECK(rmap.leaf_of(h2) == net.find_leaf("b"));
  CHECK(rmap.mapped_count() == 2);
  ReticulationLeafMap copy = rmap;
  CHECK_THROWS_AS(copy.assign(h1, net.find_leaf("a")), std::logic_error);
}

TEST_CASE("diamond-shaped component DAG") {
  const Network net = parse_network(kDiamond);
  REQUIRE(validate(net).ok());
  ComponentDag q = build_component_dag(net);
  const VertexId a = parent_of(net, "u1"), b = parent_of(net, "u2"), c = parent_of(net, "c1");
  CHECK(q.size() == 4);
  CHECK(as_set(q.successors(net.root())) == std::set<VertexId>{a, b});
  CHECK(q.successors(a) == std::vector<VertexId>{c});
  CHECK(q.successors(b) == std::vector<VertexId>{c});
  CHECK(q.next_leaf() == c);
  q.retire(c);
  CHECK(q.is_leaf(a));
  CHECK(q.is_leaf(b));
  q.retire(a);
  CHECK(q.is_leaf(b));
  CHECK_FALSE(q.is_leaf(net.root()));
  q.retire(b);
  CHECK(q.is_leaf(net.root()));
}

TEST_CASE("seeded order only permutes the ready leaves") {
  const Network net = parse_network(kDiamond);
  const VertexId a = parent_of(net, "u1"), b = parent_of(net, "u2"), c = parent_of(net, "c1");
  std::set<std::vector<VertexId>> orders;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ComponentDag q = build_component_dag(net);
    q.set_order_seed(seed);
    std::vector<VertexId> order;
    while (auto rho = q.next_leaf()) {
      order.push_back(*rho);
      q.retire(*rho);
    }
    REQUIRE(order.size() == 4);
    CHECK(order.front() == c);
    CHECK(order.back() == net.root());
    CHECK(as_set({order[1], order[2]}) == std::set<VertexId>{a, b});
    orders.insert(order);
  }
  CHECK(orders.size() == 2);
}

TEST_CASE("a base reticulation with a parent outside the pyramid stays in the base") {
  const Network net = parse_network("((a,((d,(b)#H1))#H2),(#H2,#H1));");
  REQUIRE(validate(net).ok());
  ComponentDag q = build_component_dag(net);
  const VertexId lower = parent_of(net, "d");
  const VertexId h1 = parent_of(net, "b");
  REQUIRE(q.is_leaf(lower));
  const Pyramid p = pop_pyramid(q, net);
  CHECK(p.rho == lower);
  CHECK(as_set(p.tip) == std::set<VertexId>{lower, net.find_leaf("d")});
  CHECK(p.base == std::vector<VertexId>{h1});
  CHECK(p.foundation == std::vector<VertexId>{net.find_leaf("b")});
  REQUIRE(p.cross_arcs.size() == 1);
  CHECK(p.cross_arcs.front() == std::pair{lower, h1});
}

TEST_CASE("pyramids are layered into tip, base and foundation") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    Network net;
    try {
      net = gen_network(seed, 6 + seed % 10, 1 + seed % 6, ClassTarget::kNearlyStable);
    } catch (const GeneratorError&) {
      continue;
    }
    Tree t = gen_displayed_tree(seed, net);
    if (apply_cherry_reductions(net, t) != CherryOutcome::kReduced || net.is_tree()) continue;
    ComponentDag q = build_component_dag(net);
    const std::size_t components = q.size();
    std::size_t popped = 0;
    for (VertexId rho : q.roots()) {
      if (!q.is_leaf(rho)) continue;
      const Pyramid p = materialize_pyramid(net, rho);
      ++popped;
      const std::set<VertexId> tip = as_set(p.tip);
      for (VertexId x : p.tip) CHECK(net.is_tree_vertex(x));
      for (VertexId r : p.base) CHECK(net.is_reticulation(r));
      for (VertexId l : p.foundation) CHECK(net.is_leaf(l));
      for (const auto& [x, r] : p.cross_arcs) {
        CHECK(tip.count(x));
        CHECK(std::find(p.base.begin(), p.base.end(), r) != p.base.end());
      }
      CHECK(testing::cluster(net, rho).size() ==
            std::count_if(p.tip.begin(), p.tip.end(), [&](VertexId x) { return net.is_leaf(x); }) +
                p.foundation.size());
    }
    CHECK(popped >= 1);
    CHECK(components >= 1);
  }
}

TEST_CASE("incremental maintenance matches a rebuild at every engine step") {
  std::size_t runs = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const ClassTarget cls = seed % 3 == 0   ? ClassTarget::kReticulationVisible
                            : seed % 3 == 1 ? ClassTarget::kNearlyStable
                                            : ClassTarget::kTheorem2;
    Network net;
    try {
      net = gen_network(seed, 5 + seed % 20, seed % 9, cls);
    } catch (const GeneratorError&) {
      continue;
    }
    Tree t = gen_displayed_tree(seed + 1, net);
    if (seed % 2) t = gen_perturbed_tree(seed + 2, t);
    EngineOptions options;
    options.self_check = true;
    options.order_seed = seed;
    CHECK_NOTHROW(contains(net, t, options));
    ++runs;
  }
  CHECK(runs > 150);
}

TEST_CASE("decomposition reports no difference right after construction") {
  Network net = gen_network(9, 12, 4, ClassTarget::kNearlyStable);
  Tree t = gen_displayed_tree(9, net);
  REQUIRE(apply_cherry_reductions(net, t) == CherryOutcome::kReduced);
  const Decomposition d(net);
  CHECK(d.check_consistency(net).empty());
}
