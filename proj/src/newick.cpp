#include "tc/newick.hpp"

#include <cctype>
#include <unordered_map>
#include <vector>


namespace tc {

ParseError::ParseError(ParseDiagnostics diagnostics)
    : std::runtime_error("parse error at byte " + std::to_string(diagnostics.position) + ": " +
                         diagnostics.message),
      diagnostics_(std::move(diagnostics)) {}

namespace {

bool is_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

enum class Mode { kTree, kMulTree, kNetwork };

class Parser {
 public:
  Parser(std::string_view text, Mode mode) : text_(text), mode_(mode) {}

  Network run() {
    skip_ws();
    std::vector<Frame> stack;
    VertexId top = kNoVertex;
    // Each iteration parses one element: an opening parenthesis or a leaf /
    // reference token, then unwinds any closing parentheses that follow.
    for (;;) {
      skip_ws();
      if (peek() == '(') {
        const std::size_t at = pos_++;
        stack.push_back({make_vertex(at), at});
        continue;
      }
      VertexId node = parse_leaf_token();
      for (;;) {
        skip_ws();
        if (stack.empty()) {
          top = node;
          break;
        }
        attach(stack.back().vertex, node);
        if (peek() == ',') {
          ++pos_;
          break;
        }
        if (peek() != ')') fail(pos_, "expected ',' or ')'");
        ++pos_;
        Frame done = stack.back();
        stack.pop_back();
        node = close_internal(done);
      }
      if (top != kNoVertex) break;
    }
    skip_ws();
    if (peek() != ';') fail(pos_, "expected ';'");
    ++pos_;
    skip_ws();
    if (pos_ != text_.size()) fail(pos_, "trailing characters after ';'");
    for (const auto& [id, hybrid] : hybrids_)
      if (!hybrid.has_subtree && mode_ == Mode::kNetwork && net_.out_degree(hybrid.vertex) == 0)
        fail(hybrid.first_position, "hybrid #H" + id + " never carries a subtree");
    net_.set_root(top);
    check_structure();
    return std::move(net_);
  }

 private:
  struct Frame {
    VertexId vertex;
    std::size_t position;
  };
  struct Hybrid {
    VertexId vertex = kNoVertex;
    bool has_subtree = false;
    std::size_t first_position = 0;
  };

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::size_t at, std::string message) const {
    if (at >= text_.size() && !text_.empty()) at = text_.size() - 1;
    throw ParseError({at, std::move(message), Severity::kError});
  }

  VertexId make_vertex(std::size_t at) {
    const VertexId v = net_.add_vertex();
    position_.resize(net_.capacity());
    position_[index_of(v)] = at;
    return v;
  }

  void attach(VertexId parent, VertexId child) {
    if (net_.has_arc(parent, child)) fail(position_[index_of(child)], "parallel arc to the same hybrid");
    net_.add_arc(parent, child);
  }

  std::string read_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Optional "#H<id>" suffix; returns the id or an empty string.
  std::string read_hybrid_tag() {
    if (peek() != '#') return {};
    const std::size_t at = pos_++;
    if (peek() != 'H') fail(pos_, "expected 'H' after '#'");
    ++pos_;
    std::string id;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      id += text_[pos_++];
    if (id.empty()) fail(at, "hybrid tag without id");
    if (mode_ != Mode::kNetwork) fail(at, "hybrid tag in a tree");
    return id;
  }

  void skip_branch_length() {
    skip_ws();
    if (peek() != ':') return;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == 'e' ||
            text_[pos_] == 'E' || text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    if (pos_ == start) fail(start, "expected branch length after ':'");
  }

  Hybrid& hybrid(const std::string& id, std::size_t at) {
    Hybrid& h = hybrids_[id];
    if (h.vertex == kNoVertex) {
      h.vertex = make_vertex(at);
      h.first_position = at;
    }
    return h;
  }

  VertexId parse_leaf_token() {
    const std::size_t at = pos_;
    std::string name = read_name();
    std::string id = read_hybrid_tag();
    skip_branch_length();
    if (!id.empty()) return hybrid(id, at).vertex;
    if (name.empty()) fail(at, "expected a leaf label");
    const VertexId v = make_vertex(at);
    net_.set_label(v, std::move(name));
    return v;
  }

  VertexId close_internal(const Frame& frame) {
    const std::size_t at = pos_;
    read_name();  // internal names are dropped
    std::string id = read_hybrid_tag();
    skip_branch_length();
    if (id.empty()) return frame.vertex;
    Hybrid& h = hybrid(id, at);
    if (h.has_subtree) fail(at, "hybrid #H" + id + " carries more than one subtree");
    h.has_subtree = true;
    std::vector<VertexId> kids(net_.children(frame.vertex).begin(), net_.children(frame.vertex).end());
    for (VertexId c : kids) {
      net_.remove_arc(frame.vertex, c);
      net_.add_arc(h.vertex, c);
    }
    net_.remove_vertex(frame.vertex);
    return h.vertex;
  }

  void check_structure() {
    ValidationOptions options;
    options.allow_multilabel = mode_ == Mode::kMulTree;
    options.require_tree = mode_ != Mode::kNetwork;
    const ValidationReport report = validate(net_, options);
    if (report.ok()) return;
    const Issue& first = report.issues.front();
    std::size_t at = 0;
    if (first.vertex != kNoVertex && index_of(first.vertex) < position_.size()) at = position_[index_of(first.vertex)];
    std::string message = first.message;
    if (first.kind == IssueKind::kDegreeViolation && mode_ != Mode::kNetwork) message = "non-binary vertex: " + message;
    fail(at, message);
  }

  std::string_view text_;
  Mode mode_;
  std::size_t pos_ = 0;
  Network net_;
  std::vector<std::size_t> position_;
  std::unordered_map<std::string, Hybrid> hybrids_;
};

}  // namespace

Tree parse_tree(std::string_view text) { return Parser(text, Mode::kTree).run(); }
MulTree parse_multree(std::string_view text) { return Parser(text, Mode::kMulTree).run(); }
Network parse_network(std::string_view text) { return Parser(text, Mode::kNetwork).run(); }

std::string serialize_network(const Network& net) {
  std::string out;
  if (net.root() == kNoVertex) return ";";
  std::vector<std::size_t> hybrid_id(net.capacity(), 0);
  std::size_t next_id = 0;
  struct Frame {
    VertexId vertex;
    std::size_t next_child;
  };
  std::vector<Frame> stack;
  auto enter = [&](VertexId v) {
    const bool hybrid = net.is_reticulation(v);
    if (hybrid && hybrid_id[index_of(v)] != 0) {
      out += "#H" + std::to_string(hybrid_id[index_of(v)]);
      return;
    }
    if (hybrid) hybrid_id[index_of(v)] = ++next_id;
    if (net.is_leaf(v)) {
      out += net.label(v);
      if (hybrid) out += "#H" + std::to_string(hybrid_id[index_of(v)]);
      return;
    }
    out += '(';
    stack.push_back({v, 0});
  };
  enter(net.root());
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto kids = net.children(f.vertex);
    if (f.next_child == kids.size()) {
      out += ')';
      if (net.is_reticulation(f.vertex)) out += "#H" + std::to_string(hybrid_id[index_of(f.vertex)]);
      stack.pop_back();
      continue;
    }
    if (f.next_child > 0) out += ',';
    const VertexId c = kids[f.next_child++];
    enter(c);
  }
  out += ';';
  return out;
}

}  // namespace tc
