#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tc/canonical.hpp"
#include "tc/decomposition.hpp"
#include "tc/engine.hpp"
#include "tc/generator.hpp"
#include "tc/newick.hpp"
#include "tc/oracle.hpp"
#include "tc/reductions.hpp"

using namespace tc;

namespace {

VertexId parent_of(const Network& net, const Label& label) { return net.parents(net.find_leaf(label)).front(); }

std::size_t label_count(const MulTree& m, const Label& label) { return m.vertices_with_label(label).size(); }

// Lower component D = (c, H1) below H2; H1 also hangs from Q.
const char* kTwoComponents = "((a,((c,(b)#H1))#H2),(#H2,#H1));";

}  // namespace

TEST_CASE("identical trees reduce to a single leaf") {
  Network net = parse_network("((a,b),c);");
  Tree t = parse_tree("((a,b),c);");
  CHECK(apply_cherry_reductions(net, t) == CherryOutcome::kReduced);
  CHECK(net.vertex_count() == 1);
  CHECK(t.vertex_count() == 1);
  CHECK(net.label(net.root()) == t.label(t.root()));
}

TEST_CASE("a network cherry that is not a tree cherry is rejected") {
  Network net = parse_network("((a,b),(c,d));");
  Tree t = parse_tree("((a,c),(b,d));");
  CHECK(apply_cherry_reductions(net, t) == CherryOutcome::kRejected);
}

TEST_CASE("a network without cherries is left alone") {
  Network net = parse_network("((a,(b)#H1),(#H1,c));");
  Tree t = parse_tree("((a,b),c);");
  const std::string before = serialize_network(net);
  CHECK(apply_cherry_reductions(net, t) == CherryOutcome::kReduced);
  CHECK(serialize_network(net) == before);
  CHECK(t.vertex_count() == 5);
}

TEST_CASE("cherry reduction preserves the oracle verdict") {
  std::size_t fired = 0, rejected = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Network net;
    try {
      net = gen_network(seed, 4 + seed % 12, seed % 6);
    } catch (const GeneratorError&) {
      continue;
    }
    Tree t = gen_displayed_tree(seed, net);
    if (seed % 2) t = gen_perturbed_tree(seed * 3, t);
    const bool before = oracle_displays(net, t);
    const std::size_t size = net.vertex_count();
    const CherryOutcome outcome = apply_cherry_reductions(net, t);
    if (outcome == CherryOutcome::kRejected) {
      ++rejected;
      CHECK_FALSE(before);
      continue;
    }
    CHECK(validate(net).ok());
    CHECK(validate_tree(t).ok());
    CHECK(leaf_labels(net) == leaf_labels(t));
    CHECK(oracle_displays(net, t) == before);
    if (net.vertex_count() < size) ++fired;
  }
  CHECK(fired > 100);
  CHECK(rejected > 10);
}

TEST_CASE("P' of a pyramid with an empty base is the tip") {
  const Tree t = parse_tree("((a,b),(c,d));");
  const Pyramid p = materialize_pyramid(t, t.root());
  const PyramidTree pt = pyramid_to_multree(p, t, build_reticulation_leaf_map(t));
  CHECK(canonical_newick(pt.tree) == canonical_newick(t));
  CHECK(pt.tree.max_label_multiplicity() == 1);
  for (VertexId v : pt.tree.vertices()) CHECK(std::find(p.tip.begin(), p.tip.end(), pt.origin[index_of(v)]) != p.tip.end());
}

TEST_CASE("two cross arcs to one reticulation chain give two leaves") {
  // X -> {H1, H2}, H1 -> H2 -> l, Y -> {H1, c}
  const Network net = parse_network("((((l)#H2)#H1,#H2),(#H1,c));");
  REQUIRE(validate(net).ok());
  const Pyramid p = materialize_pyramid(net, net.root());
  CHECK(p.base.size() == 2);
  CHECK(p.foundation == std::vector<VertexId>{net.find_leaf("l")});
  const PyramidTree pt = pyramid_to_multree(p, net, build_reticulation_leaf_map(net));
  CHECK(validate_multree(pt.tree).ok());
  CHECK(label_count(pt.tree, "l") == p.cross_arcs.size());
  CHECK(label_count(pt.tree, "l") == 3);
  const VertexId y_copy = pt.tree.parents(pt.tree.find_leaf("c")).front();
  VertexId x_copy = kNoVertex;
  for (VertexId v : pt.tree.vertices())
    if (!pt.tree.is_leaf(v) && v != y_copy && v != pt.tree.root()) x_copy = v;
  REQUIRE(x_copy != kNoVertex);
  for (VertexId c : pt.tree.children(x_copy)) CHECK(pt.tree.label(c) == "l");
}

TEST_CASE("label multiplicity in P' is bounded by tip size and base height") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Network net;
    try {
      net = gen_network(seed, 5 + seed % 15, 1 + seed % 7, ClassTarget::kTheorem2);
    } catch (const GeneratorError&) {
      continue;
    }
    Tree t = gen_displayed_tree(seed, net);
    if (apply_cherry_reductions(net, t) != CherryOutcome::kReduced || net.is_tree()) continue;
    const ReticulationLeafMap rmap = build_reticulation_leaf_map(net);
    const ComponentDag q = build_component_dag(net);
    for (VertexId rho : q.roots()) {
      if (!q.is_leaf(rho)) continue;
      const Pyramid p = materialize_pyramid(net, rho);
      const PyramidTree pt = pyramid_to_multree(p, net, rmap);
      const Network sub = extract_subnetwork(net, rho);
      const std::size_t height = max_reticulation_path(sub);
      const std::size_t bound = std::min<std::size_t>(p.tip.size(), std::size_t{1} << height);
      CHECK(pt.tree.max_label_multiplicity() <= bound);
    }
  }
}

TEST_CASE("anchor leaves") {
  SUBCASE("a tip leaf") {
    const Network net = parse_network("((a,(b)#H1),(#H1,c));");
    const Pyramid p = materialize_pyramid(net, net.root());
    const Label c = find_anchor_leaf(p, net);
    CHECK((c == "a" || c == "c"));
  }
  SUBCASE("a foundation leaf whose reticulation hangs from the tip only") {
    const Network net = parse_network("((#H1,(x)#H2),((b)#H1,#H2));");
    REQUIRE(validate(net).ok());
    const Pyramid p = materialize_pyramid(net, net.root());
    const Label c = find_anchor_leaf(p, net);
    CHECK((c == "b" || c == "x"));
    const auto paths = testing::all_root_leaf_paths(net);
    CHECK(testing::brute_stable_on(paths, p.rho, net.find_leaf(c)));
  }
  SUBCASE("no stable leaf") {
    const Network net = parse_network("(((((x)#H1,(y)#H2))#H3,#H1),(#H3,#H2));");
    REQUIRE(validate(net).ok());
    VertexId rho = kNoVertex;
    for (VertexId v : net.vertices())
      if (!net.is_leaf(v) && net.in_degree(v) == 1 && net.is_reticulation(net.parents(v).front())) rho = v;
    REQUIRE(rho != kNoVertex);
    const Pyramid p = materialize_pyramid(net, rho);
    CHECK(p.foundation.size() == 2);
    CHECK_THROWS_AS(find_anchor_leaf(p, net), UnsupportedNetwork);
    const auto paths = testing::all_root_leaf_paths(net);
    for (VertexId l : p.foundation) CHECK_FALSE(testing::brute_stable_on(paths, rho, l));
  }
}

TEST_CASE("anchored maximum") {
  const Tree t = parse_tree("((a,b),(c,d));");
  const VertexId c = t.find_leaf("c");
  const VertexId ab = t.parents(t.find_leaf("a")).front();
  const VertexId cd = t.parents(c).front();
  const VertexId just_c[] = {c};
  CHECK(select_anchored_maximum(just_c, t, "c") == c);
  const VertexId two[] = {ab, cd};
  CHECK(select_anchored_maximum(two, t, "c") == cd);
  const VertexId root[] = {t.root()};
  CHECK(select_anchored_maximum(root, t, "a") == t.root());
  const VertexId only_ab[] = {ab};
  CHECK_THROWS_AS(select_anchored_maximum(only_ab, t, "d"), std::logic_error);
}

TEST_CASE("fresh labels use the reserved prefix") {
  LabelFactory labels;
  const Label a = labels.next(), b = labels.next();
  CHECK(a != b);
  CHECK(LabelFactory::is_reserved(a));
  CHECK_FALSE(LabelFactory::is_reserved("t0"));
}

TEST_CASE("placing a single leaf collapses a cherry tip") {
  Network net = parse_network(kTwoComponents);
  Tree t = parse_tree("((a,c),b);");
  REQUIRE(validate(net).ok());
  const bool before = oracle_displays(net, t);
  const VertexId rho = parent_of(net, "c");
  const VertexId h1 = parent_of(net, "b");
  const Pyramid p = materialize_pyramid(net, rho);
  REQUIRE(p.tip.size() == 2);
  REQUIRE(p.cross_arcs.size() == 1);
  LabelFactory labels;
  const PlacementResult r = apply_pyramid_placement(net, t, p, t.find_leaf("c"), labels);
  CHECK(r.stray_leaves == 0);
  CHECK(r.orphans.empty());
  CHECK(validate(net).ok());
  CHECK(validate_tree(t).ok());
  CHECK(net.is_leaf(rho));
  CHECK(net.label(rho) == r.label);
  CHECK(t.find_leaf(r.label) != kNoVertex);
  CHECK(t.find_leaf("c") == kNoVertex);
  CHECK_FALSE(net.contains(h1));
  CHECK(net.is_reticulation(net.parents(rho).front()));
  CHECK(net.vertex_count() == 7);
  CHECK(oracle_displays(net, t) == before);
}

TEST_CASE("placing a subtree deletes the outside path to its foundation leaf") {
  Network net = parse_network(kTwoComponents);
  Tree t = parse_tree("(a,(c,b));");
  const bool before = oracle_displays(net, t);
  const VertexId rho = parent_of(net, "c");
  const Pyramid p = materialize_pyramid(net, rho);
  LabelFactory labels;
  const VertexId v = t.parents(t.find_leaf("b")).front();
  const PlacementResult r = apply_pyramid_placement(net, t, p, v, labels);
  CHECK(r.removed_leaves == 2);
  CHECK(validate(net).ok());
  CHECK(net.find_leaf("b") == kNoVertex);
  CHECK(net.reticulation_count() == 1);
  CHECK(net.vertex_count() == 5);
  CHECK(net.is_reticulation(net.parents(rho).front()));
  CHECK(net.has_arc(net.root(), net.parents(rho).front()));
  CHECK(oracle_displays(net, t) == before);
  CHECK(before);
}

TEST_CASE("placing the whole tree leaves a single vertex") {
  Network net = parse_network("((a,(b)#H1),(#H1,c));");
  Tree t = parse_tree("((a,b),c);");
  const Pyramid p = materialize_pyramid(net, net.root());
  LabelFactory labels;
  const PlacementResult r = apply_pyramid_placement(net, t, p, t.root(), labels);
  CHECK(net.vertex_count() == 1);
  CHECK(t.vertex_count() == 1);
  CHECK(net.label(net.root()) == r.label);
  CHECK(t.label(t.root()) == r.label);
  CHECK(r.stray_leaves == 0);
}

TEST_CASE("both rules preserve the oracle verdict inside the engine") {
  std::size_t cherry_firings = 0, placement_firings = 0;
  bool before = false;
  auto capture = [&](const Network& n, const Tree& t) { before = oracle_displays(n, t); };
  EngineOptions options;
  options.cherry_hooks.before = capture;
  options.cherry_hooks.after = [&](const Network& n, const Tree& t) {
    ++cherry_firings;
    CHECK(oracle_displays(n, t) == before);
  };
  options.placement_hooks.before = capture;
  options.placement_hooks.after = [&](const Network& n, const Tree& t) {
    ++placement_firings;
    CHECK(oracle_displays(n, t) == before);
  };
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    Network net;
    try {
      net = gen_network(seed, 4 + seed % 16, seed % 8, seed % 2 ? ClassTarget::kNearlyStable : ClassTarget::kTheorem2);
    } catch (const GeneratorError&) {
      continue;
    }
    Tree t = gen_displayed_tree(seed, net);
    if (seed % 3 == 0) t = gen_perturbed_tree(seed, t);
    contains(net, t, options);
  }
  CHECK(cherry_firings > 100);
  CHECK(placement_firings > 50);
}
