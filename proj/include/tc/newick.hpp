#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tc/network.hpp"

namespace tc {

enum class Severity { kWarning, kError };

struct ParseDiagnostics {
  /// 0-based byte offset into the input.
  std::size_t position = 0;
  std::string message;
  Severity severity = Severity::kError;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostics diagnostics);
  const ParseDiagnostics& diagnostics() const { return diagnostics_; }
  std::size_t position() const { return diagnostics_.position; }

 private:
  ParseDiagnostics diagnostics_;
};

/// Rooted binary Newick with mandatory, unique leaf labels. Internal names and
/// branch lengths are read and dropped.
Tree parse_tree(std::string_view text);

/// Like parse_tree, but labels may repeat.
MulTree parse_multree(std::string_view text);

/// Extended Newick: every occurrence of `#H<id>` denotes the same reticulation
/// vertex, and at most one occurrence carries the subtree below it.
Network parse_network(std::string_view text);

/// Extended Newick text with children in stored order and hybrid ids
/// numbered by first visit. Trees come out as plain Newick.
std::string serialize_network(const Network& net);

}  // namespace tc
