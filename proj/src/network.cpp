#include "tc/network.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace tc {

namespace {

void erase_one(std::vector<VertexId>& list, VertexId v) {
  auto it = std::find(list.begin(), list.end(), v);
  if (it == list.end()) throw std::logic_error("arc endpoint missing from adjacency list");
  list.erase(it);
}

std::string vertex_text(VertexId v) { return std::to_string(index_of(v)); }

}  // namespace

StaleVertex::StaleVertex(VertexId v)
    : std::out_of_range("stale or unknown vertex id " + vertex_text(v)), vertex_(v) {}

VertexId Network::add_vertex() {
  const VertexId v = vertex_at(alive_.size());
  children_.emplace_back();
  parents_.emplace_back();
  labels_.emplace_back();
  alive_.push_back(true);
  ++vertex_count_;
  if (root_ == kNoVertex) root_ = v;
  return v;
}

VertexId Network::add_leaf(Label label) {
  const VertexId v = add_vertex();
  set_label(v, std::move(label));
  return v;
}

void Network::add_arc(VertexId from, VertexId to) {
  check(from);
  check(to);
  children_[index_of(from)].push_back(to);
  parents_[index_of(to)].push_back(from);
  ++arc_count_;
  if (root_ == to) root_ = from;
}

void Network::remove_arc(VertexId from, VertexId to) {
  check(from);
  check(to);
  erase_one(children_[index_of(from)], to);
  erase_one(parents_[index_of(to)], from);
  --arc_count_;
}

bool Network::has_arc(VertexId from, VertexId to) const {
  const auto kids = children(from);
  return std::find(kids.begin(), kids.end(), to) != kids.end();
}

void Network::remove_vertex(VertexId v) {
  check(v);
  const std::size_t i = index_of(v);
  for (VertexId c : children_[i]) erase_one(parents_[index_of(c)], v);
  for (VertexId p : parents_[i]) erase_one(children_[index_of(p)], v);
  arc_count_ -= children_[i].size() + parents_[i].size();
  children_[i].clear();
  children_[i].shrink_to_fit();
  parents_[i].clear();
  parents_[i].shrink_to_fit();
  clear_label(v);
  alive_[i] = false;
  --vertex_count_;
  if (root_ == v) root_ = kNoVertex;
}

void Network::set_label(VertexId v, Label label) {
  check(v);
  clear_label(v);
  if (label.empty()) return;
  label_index_[label].push_back(v);
  labels_[index_of(v)] = std::move(label);
}

void Network::clear_label(VertexId v) {
  check(v);
  Label& current = labels_[index_of(v)];
  if (current.empty()) return;
  auto it = label_index_.find(current);
  erase_one(it->second, v);
  if (it->second.empty()) label_index_.erase(it);
  current.clear();
}

std::span<const VertexId> Network::children(VertexId v) const {
  check(v);
  return children_[index_of(v)];
}

std::span<const VertexId> Network::parents(VertexId v) const {
  check(v);
  return parents_[index_of(v)];
}

const Label& Network::label(VertexId v) const {
  check(v);
  return labels_[index_of(v)];
}

void Network::set_root(VertexId v) {
  check(v);
  root_ = v;
}

VertexId Network::find_leaf(const Label& label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end() || it->second.empty()) return kNoVertex;
  return it->second.front();
}

std::span<const VertexId> Network::vertices_with_label(const Label& label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end()) return {};
  return it->second;
}

std::vector<VertexId> Network::vertices() const {
  std::vector<VertexId> out;
  out.reserve(vertex_count_);
  for (std::size_t i = 0; i < alive_.size(); ++i)
    if (alive_[i]) out.push_back(vertex_at(i));
  return out;
}

std::vector<VertexId> Network::leaves() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < alive_.size(); ++i)
    if (alive_[i] && children_[i].empty()) out.push_back(vertex_at(i));
  return out;
}

std::size_t Network::reticulation_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < alive_.size(); ++i)
    if (alive_[i] && parents_[i].size() >= 2) ++n;
  return n;
}

std::size_t Network::max_label_multiplicity() const {
  std::size_t k = 0;
  for (const auto& [label, where] : label_index_) k = std::max(k, where.size());
  return k;
}

// ---------------------------------------------------------------------------

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(), [kind](const Issue& i) { return i.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const Issue& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.message;
  }
  return out;
}

ValidationReport validate(const Network& net, ValidationOptions options) {
  ValidationReport report;
  auto add = [&](IssueKind kind, VertexId v, std::string message) {
    report.issues.push_back({kind, v, std::move(message)});
  };
  if (net.vertex_count() == 0) {
    add(IssueKind::kEmpty, kNoVertex, "empty network");
    return report;
  }

  const std::vector<VertexId> all = net.vertices();
  std::vector<VertexId> sources;
  for (VertexId v : all)
    if (net.in_degree(v) == 0) sources.push_back(v);
  if (sources.empty()) {
    add(IssueKind::kNoSource, kNoVertex, "no source vertex");
  } else if (sources.size() > 1) {
    add(IssueKind::kMultipleSources, sources[1],
        "multiple sources (" + std::to_string(sources.size()) + " vertices without parents)");
  } else if (net.root() != sources.front()) {
    add(IssueKind::kRootMismatch, sources.front(), "root does not match the unique source");
  }

  // Kahn's algorithm; anything left over sits on a cycle.
  std::vector<std::size_t> pending(net.capacity(), 0);
  std::vector<VertexId> stack;
  for (VertexId v : all) {
    pending[index_of(v)] = net.in_degree(v);
    if (pending[index_of(v)] == 0) stack.push_back(v);
  }
  std::size_t seen = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    ++seen;
    for (VertexId c : net.children(v))
      if (--pending[index_of(c)] == 0) stack.push_back(c);
  }
  if (seen != all.size()) add(IssueKind::kCycle, kNoVertex, "cycle detected");

  for (VertexId v : all) {
    const std::size_t in = net.in_degree(v);
    const std::size_t out = net.out_degree(v);
    const bool labeled = net.has_label(v);
    if (out == 0) {
      if (in >= 2) add(IssueKind::kReticulationLeaf, v, "reticulation leaf at vertex " + vertex_text(v));
      if (!labeled) add(IssueKind::kUnlabeledSink, v, "unlabeled sink at vertex " + vertex_text(v));
      continue;
    }
    if (labeled) add(IssueKind::kLabeledInternal, v, "labeled internal vertex " + vertex_text(v));
    const bool degree_ok = in == 0 ? out == 2 : in + out == 3;
    if (!degree_ok)
      add(IssueKind::kDegreeViolation, v,
          "degree violation at vertex " + vertex_text(v) + " (in=" + std::to_string(in) +
              ", out=" + std::to_string(out) + ")");
    if (options.require_tree && in >= 2)
      add(IssueKind::kReticulationInTree, v, "reticulation in a tree at vertex " + vertex_text(v));
  }

  if (!options.allow_multilabel) {
    for (const auto& [label, where] : net.label_index())
      if (where.size() > 1) add(IssueKind::kDuplicateLabel, where[1], "duplicate label '" + label + "'");
  }
  return report;
}

// ---------------------------------------------------------------------------

bool is_ancestor(const Network& tree, VertexId u, VertexId v) {
  tree.check(u);
  tree.check(v);
  for (VertexId w = u;;) {
    if (w == v) return true;
    const auto up = tree.parents(w);
    if (up.empty()) return false;
    w = up.front();
  }
}

std::vector<VertexId> topological_order(const Network& net) {
  std::vector<std::size_t> pending(net.capacity(), 0);
  std::vector<VertexId> order;
  order.reserve(net.vertex_count());
  for (VertexId v : net.vertices()) {
    pending[index_of(v)] = net.in_degree(v);
    if (pending[index_of(v)] == 0) order.push_back(v);
  }
  for (std::size_t head = 0; head < order.size(); ++head)
    for (VertexId c : net.children(order[head]))
      if (--pending[index_of(c)] == 0) order.push_back(c);
  if (order.size() != net.vertex_count()) throw InvalidInput("network contains a cycle");
  return order;
}

Network extract_subnetwork(const Network& net, VertexId v, std::vector<VertexId>* origin) {
  net.check(v);
  std::vector<VertexId> copy_of(net.capacity(), kNoVertex);
  std::vector<VertexId> order;
  Network sub;
  std::vector<VertexId> stack{v};
  copy_of[index_of(v)] = sub.add_vertex();
  order.push_back(v);
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (VertexId c : net.children(x)) {
      if (copy_of[index_of(c)] != kNoVertex) continue;
      copy_of[index_of(c)] = sub.add_vertex();
      order.push_back(c);
      stack.push_back(c);
    }
  }
  for (VertexId x : order) {
    const VertexId cx = copy_of[index_of(x)];
    if (net.has_label(x)) sub.set_label(cx, net.label(x));
    for (VertexId c : net.children(x)) sub.add_arc(cx, copy_of[index_of(c)]);
  }
  sub.set_root(copy_of[index_of(v)]);
  if (origin) *origin = std::move(order);
  return sub;
}

std::vector<Label> leaf_labels(const Network& net) {
  std::vector<Label> out;
  for (VertexId v : net.leaves())
    if (net.has_label(v)) out.push_back(net.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Normalizer {
 public:
  Normalizer(Network& net, EditObserver* observer) : net_(net), observer_(observer) {}

  void push(VertexId v) { work_.push_back(v); }

  NormalizeResult run() {
    while (!work_.empty()) {
      VertexId v = work_.front();
      work_.pop_front();
      step(v);
    }
    NormalizeResult result;
    for (VertexId v : touched_)
      if (net_.contains(v)) result.touched.push_back(v);
    result.orphans.assign(orphans_.begin(), orphans_.end());
    return result;
  }

  void suppress(VertexId v) {
    const VertexId child = net_.children(v).front();
    const VertexId parent = net_.in_degree(v) == 1 ? net_.parents(v).front() : kNoVertex;
    if (parent == kNoVertex) {
      net_.remove_vertex(v);
      net_.set_root(child);
    } else {
      const bool parallel = net_.has_arc(parent, child);
      // Keep the child's slot in the parent's ordered child list.
      std::vector<VertexId> order(net_.children(parent).begin(), net_.children(parent).end());
      net_.remove_vertex(v);
      if (!parallel) {
        for (VertexId c : order) {
          if (c == v) {
            net_.add_arc(parent, child);
          } else {
            net_.remove_arc(parent, c);
            net_.add_arc(parent, c);
          }
        }
      }
      mark(parent);
    }
    mark(child);
    if (observer_) observer_->vertex_suppressed(net_, v, parent, child);
  }

 private:
  void mark(VertexId v) {
    touched_.push_back(v);
    push(v);
  }

  void step(VertexId v) {
    if (!net_.contains(v)) return;
    const std::size_t in = net_.in_degree(v);
    const std::size_t out = net_.out_degree(v);
    const bool labeled = net_.has_label(v);
    if (out == 0 && !labeled) {
      const std::vector<VertexId> former(net_.parents(v).begin(), net_.parents(v).end());
      net_.remove_vertex(v);
      if (observer_) observer_->sink_removed(net_, v, former);
      for (VertexId p : former) mark(p);
      return;
    }
    if (in == 0 && v != net_.root() && !labeled) {
      const std::vector<VertexId> former(net_.children(v).begin(), net_.children(v).end());
      net_.remove_vertex(v);
      if (observer_) observer_->orphan_removed(net_, v, former);
      for (VertexId c : former) mark(c);
      return;
    }
    if (in == 0 && v != net_.root()) {
      if (orphans_seen_.insert(v).second) {
        orphans_.push_back(v);
        if (observer_) observer_->orphan_found(net_, v);
      }
      return;
    }
    if (!labeled && out == 1 && (in == 1 || (in == 0 && v == net_.root()))) suppress(v);
  }

  Network& net_;
  EditObserver* observer_;
  std::deque<VertexId> work_;
  std::vector<VertexId> touched_;
  std::vector<VertexId> orphans_;
  std::unordered_set<VertexId> orphans_seen_;
};

}  // namespace

NormalizeResult normalize(Network& net, std::span<const VertexId> seeds, EditObserver* observer) {
  Normalizer normalizer(net, observer);
  for (VertexId v : seeds) normalizer.push(v);
  return normalizer.run();
}

void suppress_degree_two(Network& net, VertexId v, EditObserver* observer) {
  net.check(v);
  const std::size_t in = net.in_degree(v);
  const std::size_t out = net.out_degree(v);
  const bool root_case = in == 0 && v == net.root();
  if (out != 1 || !(in == 1 || root_case))
    throw std::invalid_argument("suppress_degree_two: vertex " + std::to_string(index_of(v)) +
                                " has in=" + std::to_string(in) + ", out=" + std::to_string(out));
  Normalizer normalizer(net, observer);
  normalizer.suppress(v);
  normalizer.run();
}

}  // namespace tc
