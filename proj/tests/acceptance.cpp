// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "tc/bench.hpp"
#include "tc/canonical.hpp"
#include "tc/decomposition.hpp"
#include "tc/engine.hpp"
#include "tc/generator.hpp"
#include "tc/mul_containment.hpp"
#include "tc/newick.hpp"
#include "tc/oracle.hpp"
#include "tc/reductions.hpp"
#include "tc/stability.hpp"

using namespace tc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

bool report(int id, const std::string& title, const Outcome& o) {
  std::printf("criterion %d: %s  %s%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(),
              o.detail.empty() ? "" : "  -- ", o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

struct Fixture {
  ClassTarget target;
  Network net;
  Tree tree;
  bool planted;
};

// Random supported instances for the engine-vs-oracle sweep.
std::vector<Fixture> make_fixtures(std::size_t count) {
  const ClassTarget targets[] = {ClassTarget::kReticulationVisible, ClassTarget::kNearlyStable,
                                 ClassTarget::kTheorem2};
  std::vector<Fixture> out;
  for (std::uint64_t seed = 1; out.size() < count; ++seed) {
    Rng rng(seed * 0x2545f4914f6cdd1dULL);
    const ClassTarget target = targets[out.size() % 3];
    const std::size_t leaves = 4 + rng.below(37);
    const std::size_t rets = rng.below(11);
    Network net;
    try {
      net = gen_network(seed, leaves, rets, target);
    } catch (const GeneratorError&) {
      continue;
    }
    const bool planted = out.size() % 2 == 0;
    Tree t = gen_displayed_tree(seed + 1, net);
    if (!planted) t = gen_perturbed_tree(seed + 2, t);
    out.push_back({target, std::move(net), std::move(t), planted});
  }
  return out;
}

struct SweepStats {
  std::size_t cherry_firings = 0;
  std::size_t placement_firings = 0;
  std::size_t cherry_broken = 0;
  std::size_t placement_broken = 0;
  std::size_t tip_violations = 0;
};

Outcome criterion_engine_vs_oracle(const std::vector<Fixture>& fixtures, SweepStats& stats, double& seconds) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t agree = 0, yes = 0;
  bool before = false;
  auto capture = [&](const Network& n, const Tree& t) { before = oracle_displays(n, t); };
  EngineOptions hooked;
  hooked.cherry_hooks.before = capture;
  hooked.cherry_hooks.after = [&](const Network& n, const Tree& t) {
    ++stats.cherry_firings;
    stats.cherry_broken += oracle_displays(n, t) != before;
  };
  hooked.placement_hooks.before = capture;
  hooked.placement_hooks.after = [&](const Network& n, const Tree& t) {
    ++stats.placement_firings;
    stats.placement_broken += oracle_displays(n, t) != before;
  };
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const Fixture& f = fixtures[i];
    EngineOptions options = i % 4 == 0 ? hooked : EngineOptions{};
    options.order_seed = i;
    try {
      const EngineResult r = contains(f.net, f.tree, options);
      const bool want = oracle_displays(f.net, f.tree);
      yes += want;
      if (r.verdict != Verdict::kUnsupported && (r.verdict == Verdict::kYes) == want)
        ++agree;
      else
        o.fail("fixture " + std::to_string(i) + ": engine " + to_string(r.verdict) + ", oracle " +
               (want ? "YES" : "NO"));
      if (r.trace.tip_total > r.trace.network_size) ++stats.tip_violations;
    } catch (const std::exception& e) {
      o.fail("fixture " + std::to_string(i) + ": " + e.what());
    }
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (fixtures.size() < 2000) o.fail("only " + std::to_string(fixtures.size()) + " instances");
  if (seconds > 300) o.fail("took " + std::to_string(seconds) + " s");
  if (o.pass)
    o.detail = std::to_string(agree) + "/" + std::to_string(fixtures.size()) + " agree (" + std::to_string(yes) +
               " displayed), " + std::to_string(static_cast<int>(seconds)) + " s";
  return o;
}

Outcome criterion_mul_minsets() {
  Outcome o;
  MulContainment dp;
  std::size_t checked = 0, largest = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Rng rng(seed * 7919);
    const std::size_t alphabet = 2 + rng.below(6);
    MulTree m = gen_tree(seed, 1 + rng.below(10));
    for (VertexId v : m.leaves()) m.set_label(v, "t" + std::to_string(rng.below(alphabet)));
    const Tree t = gen_tree(seed + 100000, std::min<std::size_t>(alphabet, 1 + rng.below(7)));
    const LcaIndex idx(m);
    dp.set_order_seed(seed);
    dp.run(m, idx, t);
    const std::size_t k = m.max_label_multiplicity();
    for (VertexId v : t.vertices()) {
      std::vector<VertexId> got(dp.minset(v).begin(), dp.minset(v).end());
      std::sort(got.begin(), got.end());
      const std::vector<VertexId> want = oracle_minima(m, t, v);
      // A vertex the DP skips has a child that is not displayed, so T_v is not either.
      if (got != want) o.fail("seed " + std::to_string(seed) + ": M(v) differs from the oracle minima");
      if (got.size() > k) o.fail("seed " + std::to_string(seed) + ": |M(v)| exceeds k");
      largest = std::max(largest, got.size());
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " minsets, largest " + std::to_string(largest);
  return o;
}

Outcome criterion_rules_preserve(const SweepStats& stats) {
  Outcome o;
  if (stats.cherry_broken) o.fail(std::to_string(stats.cherry_broken) + " cherry firings changed the verdict");
  if (stats.placement_broken)
    o.fail(std::to_string(stats.placement_broken) + " placement firings changed the verdict");
  if (stats.cherry_firings < 500) o.fail("only " + std::to_string(stats.cherry_firings) + " cherry firings");
  if (stats.placement_firings < 500)
    o.fail("only " + std::to_string(stats.placement_firings) + " placement firings");
  if (o.pass)
    o.detail = std::to_string(stats.cherry_firings) + " cherry and " + std::to_string(stats.placement_firings) +
               " placement firings";
  return o;
}

// Trees on the leaf labels of `p`, some displayed by it and some not.
std::vector<Tree> probe_trees(std::uint64_t seed, const Network& p) {
  std::vector<Tree> out;
  const Tree shown = gen_displayed_tree(seed, p);
  out.push_back(shown);
  if (shown.leaves().size() >= 4) {
    out.push_back(gen_perturbed_tree(seed + 1, shown));
    out.push_back(gen_perturbed_tree(seed + 2, out.back()));
  }
  Tree random = gen_tree(seed + 3, shown.leaves().size());
  const std::vector<Label> labels = leaf_labels(shown);
  std::size_t i = 0;
  for (VertexId v : random.leaves()) random.set_label(v, labels[i++]);
  out.push_back(std::move(random));
  return out;
}

Outcome criterion_pyramids() {
  Outcome o;
  std::size_t pyramids = 0, nonempty_base = 0, comparisons = 0, displayed = 0;
  for (std::uint64_t seed = 1; pyramids < 200 && seed < 100000; ++seed) {
    Rng rng(seed * 104729);
    Network net;
    try {
      if (seed % 3 == 0)
        net = gen_chain_network(seed, 6 + rng.below(10), 1 + rng.below(3), 1 + rng.below(3));
      else
        net = gen_network(seed, 5 + rng.below(12), 1 + rng.below(7), ClassTarget::kTheorem2);
    } catch (const GeneratorError&) {
      continue;
    }
    Tree t = gen_displayed_tree(seed, net);
    if (apply_cherry_reductions(net, t) != CherryOutcome::kReduced || net.is_tree()) continue;
    const ReticulationLeafMap rmap = build_reticulation_leaf_map(net);
    const ComponentDag q = build_component_dag(net);
    for (VertexId rho : q.roots()) {
      if (!q.is_leaf(rho) || pyramids == 200) continue;
      const Network p = extract_subnetwork(net, rho);
      if (max_reticulation_path(p) > 3) continue;
      const Pyramid pyr = materialize_pyramid(net, rho);
      const PyramidTree pt = pyramid_to_multree(pyr, net, rmap);
      ++pyramids;
      nonempty_base += !pyr.base.empty();
      for (const Tree& tree : probe_trees(seed * 31 + pyramids, p)) {
        for (VertexId v : tree.vertices()) {
          const bool by_p = oracle_displays(p, extract_subnetwork(tree, v));
          const bool by_prime = oracle_subtree_display(pt.tree, tree, v);
          ++comparisons;
          displayed += by_p;
          if (by_p != by_prime) o.fail("pyramid " + std::to_string(pyramids) + ": P and P' disagree");
        }
      }
    }
  }
  if (pyramids < 200) o.fail("only " + std::to_string(pyramids) + " pyramids");
  if (o.pass)
    o.detail = std::to_string(pyramids) + " pyramids (" + std::to_string(nonempty_base) + " with a base), " +
               std::to_string(comparisons) + " subtrees, " + std::to_string(displayed) + " displayed";
  return o;
}

Outcome criterion_scaling(std::size_t& tip_violations) {
  Outcome o;
  BenchConfig config;
  config.family = BenchFamily::kReticulationVisible;
  config.sizes = size_ladder(12, 17);
  config.repetitions = 5;
  const std::vector<BenchRow> rows = run_bench(config);
  for (const BenchRow& row : rows) tip_violations += row.tip_total > row.n;
  const double ratio = rows.back().ns_per_vertex / rows.front().ns_per_vertex;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.0f ns/vertex at n=%zu, %.0f at n=%zu, ratio %.2f", rows.front().ns_per_vertex,
                rows.front().n, rows.back().ns_per_vertex, rows.back().n, ratio);
  o.detail = buf;
  if (ratio > 3.0) o.pass = false;
  return o;
}

Outcome criterion_tip_total(std::size_t from_sweep, std::size_t from_bench) {
  Outcome o;
  if (from_sweep) o.fail(std::to_string(from_sweep) + " sweep runs exceed |N|");
  if (from_bench) o.fail(std::to_string(from_bench) + " benchmark runs exceed |N|");
  return o;
}

Outcome criterion_path_bounds(const std::vector<Fixture>& fixtures) {
  Outcome o;
  std::size_t rv = 0, ns = 0;
  for (const Fixture& f : fixtures) {
    const std::size_t path = max_reticulation_path(f.net);
    if (f.target == ClassTarget::kReticulationVisible) {
      ++rv;
      if (path > 1) o.fail("reticulation-visible fixture with path " + std::to_string(path));
    } else if (f.target == ClassTarget::kNearlyStable) {
      ++ns;
      if (path > 2) o.fail("nearly-stable fixture with path " + std::to_string(path));
    }
  }
  if (o.pass) o.detail = std::to_string(rv) + " reticulation-visible, " + std::to_string(ns) + " nearly-stable";
  return o;
}

Outcome criterion_round_trip() {
  Outcome o;
  std::size_t done = 0;
  for (std::uint64_t seed = 1; done < 1000; ++seed) {
    Rng rng(seed * 6151);
    const std::size_t leaves = 2 + rng.below(60);
    Network net;
    try {
      switch (seed % 4) {
        case 0: net = gen_network(seed, leaves, rng.below(15)); break;
        case 1: net = gen_network(seed, leaves, rng.below(8), ClassTarget::kNearlyStable); break;
        case 2: net = gen_layered_rv_network(seed, leaves, rng.below(leaves)); break;
        default: net = gen_chain_network(seed, leaves, rng.below(leaves / 2 + 1), 1 + rng.below(4)); break;
      }
    } catch (const GeneratorError&) {
      continue;
    }
    ++done;
    try {
      const std::string once = serialize_network(net);
      const Network first = parse_network(once);
      const Network second = parse_network(serialize_network(first));
      if (!isomorphic(first, net) || !isomorphic(second, first))
        o.fail("seed " + std::to_string(seed) + ": round trip is not isomorphic");
    } catch (const std::exception& e) {
      o.fail("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(done) + " networks";
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  const std::vector<Fixture> fixtures = make_fixtures(2400);
  SweepStats stats;
  double seconds = 0;
  ok &= report(1, "engine agrees with the exhaustive oracle", criterion_engine_vs_oracle(fixtures, stats, seconds));
  ok &= report(2, "MUL-tree minsets equal the oracle minima", criterion_mul_minsets());
  ok &= report(3, "cherry and placement rules preserve the verdict", criterion_rules_preserve(stats));
  ok &= report(4, "pyramids and their MUL-trees display the same subtrees", criterion_pyramids());
  std::size_t bench_violations = 0;
  const Outcome scaling = criterion_scaling(bench_violations);
  ok &= report(5, "time per vertex stays flat from 2^12 to 2^17", scaling);
  ok &= report(6, "total tip size never exceeds the network size",
               criterion_tip_total(stats.tip_violations, bench_violations));
  ok &= report(7, "reticulation path bounds per class", criterion_path_bounds(fixtures));
  ok &= report(8, "newick round trips are isomorphism-stable", criterion_round_trip());
  return ok ? 0 : 1;
}
