#include "tc/engine.hpp"

#include <chrono>
#include <sstream>

#include "tc/decomposition.hpp"
#include "tc/lca_index.hpp"
#include "tc/mul_containment.hpp"
#include "tc/stability.hpp"

namespace tc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kYes: return "YES";
    case Verdict::kNo: return "NO";
    case Verdict::kUnsupported: return "UNSUPPORTED";
  }
  return "?";
}

std::string RunTrace::to_text() const {
  std::ostringstream out;
  for (const TraceEvent& e : events) {
    switch (e.kind) {
      case TraceEvent::Kind::kCherries:
        out << "cherries: " << e.text << "\n";
        break;
      case TraceEvent::Kind::kPyramid:
        out << "pyramid: tip=" << e.tip << " base=" << e.base << " foundation=" << e.foundation
            << " mul=" << e.mul_size << " max|M|=" << e.max_minset << " anchor=" << e.anchor
            << " placed=" << e.placed << "\n";
        break;
      case TraceEvent::Kind::kNote:
        out << "note: " << e.text << "\n";
        break;
    }
  }
  out << "verdict: " << to_string(verdict);
  if (!message.empty()) out << " (" << message << ")";
  out << "\n|N|=" << network_size << " sum|P^T|=" << tip_total << " pyramids=" << pyramids
      << " cherries=" << cherries << " queue_rebuilds=" << queue_rebuilds << "\n";
  out << "ms: validate=" << validate_ms << " cherries=" << cherry_ms << " decompose=" << decompose_ms
      << " loop=" << main_loop_ms << "\n";
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_inputs(const Network& net, const Tree& t) {
  const ValidationReport nr = validate(net);
  if (!nr.ok()) throw InvalidInput("invalid network: " + nr.summary());
  const ValidationReport tr = validate_tree(t);
  if (!tr.ok()) throw InvalidInput("invalid tree: " + tr.summary());
  const auto& nl = net.label_index();
  const auto& tl = t.label_index();
  for (const auto& [label, where] : nl) {
    if (LabelFactory::is_reserved(label)) throw InvalidInput("label uses the reserved '@' prefix: " + label);
    if (!tl.count(label)) throw InvalidInput("label sets differ: '" + label + "' is missing from the tree");
  }
  for (const auto& [label, where] : tl)
    if (!nl.count(label)) throw InvalidInput("label sets differ: '" + label + "' is missing from the network");
}

bool accepted(const Network& net, const Tree& t) {
  return net.vertex_count() == 1 && t.vertex_count() == 1 && net.label(net.root()) == t.label(t.root());
}

class Engine {
 public:
  Engine(const Network& net, const Tree& t, const EngineOptions& options)
      : net_(extract_subnetwork(net, net.root())), t_(extract_subnetwork(t, t.root())), options_(options) {}

  EngineResult run() {
    trace_.network_size = net_.vertex_count();
    if (options_.strict) {
      const ClassReport report = classify_detailed(net_);
      if (!report.precondition_holds)
        return finish(Verdict::kUnsupported, "tree vertex " + std::to_string(index_of(report.failing_vertex)) +
                                                 " has a reticulation parent and is not stable");
    }
    if (net_.is_tree()) {
      trace_.pyramids = 1;
      trace_.tip_total = net_.vertex_count();
      return finish(displays(net_, t_) ? Verdict::kYes : Verdict::kNo, "");
    }

    auto start = Clock::now();
    CherryReducer cherries(net_, t_);
    cherries.set_hooks(&options_.cherry_hooks);
    const CherryOutcome first = cherries.run();
    trace_.cherry_ms = ms_since(start);
    trace_.cherries += cherries.applications();
    note_cherries(cherries.applications());
    if (first == CherryOutcome::kRejected) return finish(Verdict::kNo, rejection(cherries));

    start = Clock::now();
    std::optional<Decomposition> decomposition(std::in_place, net_);
    decomposition->dag().set_order_seed(options_.order_seed);
    dp_.set_order_seed(options_.order_seed);
    trace_.decompose_ms = ms_since(start);

    start = Clock::now();
    bool rebuilt = false;
    while (net_.vertex_count() > 1) {
      std::optional<Pyramid> p = decomposition->next_pyramid(net_);
      if (!p) {
        // Only reachable if incremental maintenance lost a component.
        if (rebuilt) throw std::logic_error("component DAG empty on an unreduced network");
        rebuilt = true;
        ++trace_.queue_rebuilds;
        decomposition.emplace(net_);
        decomposition->dag().set_order_seed(options_.order_seed);
        continue;
      }
      rebuilt = false;
      const std::optional<Verdict> stop = place(*p, *decomposition);
      if (stop) {
        trace_.main_loop_ms = ms_since(start);
        return finish(*stop, message_);
      }
    }
    trace_.main_loop_ms = ms_since(start);
    return finish(accepted(net_, t_) ? Verdict::kYes : Verdict::kNo, "");
  }

 private:
  std::optional<Verdict> place(const Pyramid& p, Decomposition& decomposition) {
    ++trace_.pyramids;
    trace_.tip_total += p.tip.size();

    Label anchor;
    try {
      anchor = find_anchor_leaf(p, net_);
    } catch (const UnsupportedNetwork& e) {
      message_ = e.what();
      return Verdict::kUnsupported;
    }

    const PyramidTree mul = pyramid_to_multree(p, net_, decomposition.leaf_map());
    const LcaIndex index(mul.tree);
    const std::vector<VertexId>& maxima = dp_.run(mul.tree, index, t_);
    trace_.max_minset = std::max(trace_.max_minset, dp_.max_minset_size());
    const VertexId v = select_anchored_maximum(maxima, t_, anchor);

    if (options_.placement_hooks.before) options_.placement_hooks.before(net_, t_);
    const PlacementResult placed = apply_pyramid_placement(net_, t_, p, v, labels_, &decomposition);
    if (options_.placement_hooks.after) options_.placement_hooks.after(net_, t_);

    if (options_.record_events) {
      TraceEvent e;
      e.kind = TraceEvent::Kind::kPyramid;
      e.tip = p.tip.size();
      e.base = p.base.size();
      e.foundation = p.foundation.size();
      e.mul_size = mul.tree.vertex_count();
      e.max_minset = dp_.max_minset_size();
      e.anchor = anchor;
      e.placed = placed.label;
      trace_.events.push_back(std::move(e));
    }

    if (placed.stray_leaves > 0) {
      message_ = "a leaf hanging from the pyramid tip is not in the placed subtree";
      return Verdict::kNo;
    }
    if (!placed.orphans.empty()) {
      message_ = "placement cut every path from the root to some leaf";
      return Verdict::kNo;
    }

    std::vector<VertexId> seeds = placed.touched;
    seeds.push_back(p.rho);
    CherryReducer cherries(net_, t_);
    cherries.set_observer(&decomposition);
    cherries.set_hooks(&options_.cherry_hooks);
    const CherryOutcome outcome = cherries.run_from(seeds);
    trace_.cherries += cherries.applications();
    note_cherries(cherries.applications());
    if (outcome == CherryOutcome::kRejected) {
      message_ = rejection(cherries);
      return Verdict::kNo;
    }

    if (options_.self_check) self_check(decomposition);
    return std::nullopt;
  }

  void self_check(const Decomposition& decomposition) const {
    const ValidationReport report = validate(net_);
    if (!report.ok()) throw std::logic_error("network invalid after a step: " + report.summary());
    const ValidationReport treport = validate_tree(t_);
    if (!treport.ok()) throw std::logic_error("tree invalid after a step: " + treport.summary());
    const std::string diff = decomposition.check_consistency(net_);
    if (!diff.empty()) throw std::logic_error("decomposition out of date: " + diff);
  }

  void note_cherries(std::size_t n) {
    if (!options_.record_events || n == 0) return;
    TraceEvent e;
    e.kind = TraceEvent::Kind::kCherries;
    e.text = std::to_string(n) + " applied";
    trace_.events.push_back(std::move(e));
  }

  static std::string rejection(const CherryReducer& cherries) {
    return "cherry {" + cherries.last_pair().first + ", " + cherries.last_pair().second +
           "} of the network is not a cherry of the tree";
  }

  EngineResult finish(Verdict verdict, std::string message) {
    trace_.verdict = verdict;
    trace_.message = std::move(message);
    return {verdict, std::move(trace_)};
  }

  Network net_;
  Tree t_;
  const EngineOptions& options_;
  RunTrace trace_;
  MulContainment dp_;
  LabelFactory labels_;
  std::string message_;
};

}  // namespace

EngineResult contains(const Network& net, const Tree& t, const EngineOptions& options) {
  const auto start = Clock::now();
  check_inputs(net, t);
  const double validate_ms = ms_since(start);
  EngineResult result = Engine(net, t, options).run();
  result.trace.validate_ms = validate_ms;
  return result;
}

std::size_t max_reticulation_path(const Network& net) {
  const std::vector<VertexId> order = topological_order(net);
  std::vector<std::size_t> length(net.capacity(), 0);
  std::size_t best = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (!net.is_reticulation(v)) continue;
    const VertexId child = net.children(v).front();
    length[index_of(v)] = 1 + (net.is_reticulation(child) ? length[index_of(child)] : 0);
    best = std::max(best, length[index_of(v)]);
  }
  return best;
}

}  // namespace tc
