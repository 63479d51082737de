#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tc/network.hpp"
#include "tc/reductions.hpp"

namespace tc {

enum class Verdict { kYes, kNo, kUnsupported };

std::string to_string(Verdict v);

struct EngineOptions {
  /// Classify up front and refuse networks outside the supported class.
  bool strict = false;
  /// Shuffles the order in which ready pyramids and DP vertices are taken.
  std::optional<std::uint64_t> order_seed;
  /// Rebuilds the decomposition after every step and compares (slow).
  bool self_check = false;
  /// Record one event per rule firing in the trace.
  bool record_events = true;
  ReductionHooks cherry_hooks;
  ReductionHooks placement_hooks;
};

struct TraceEvent {
  enum class Kind { kCherries, kPyramid, kNote };
  Kind kind = Kind::kNote;
  std::size_t tip = 0;
  std::size_t base = 0;
  std::size_t foundation = 0;
  /// Size of P' and the largest |M(v)| seen while processing it.
  std::size_t mul_size = 0;
  std::size_t max_minset = 0;
  Label anchor;
  Label placed;
  std::string text;
};

struct RunTrace {
  Verdict verdict = Verdict::kNo;
  std::string message;
  std::vector<TraceEvent> events;
  std::size_t network_size = 0;
  /// Sum of tip sizes over all processed pyramids.
  std::size_t tip_total = 0;
  std::size_t pyramids = 0;
  std::size_t cherries = 0;
  std::size_t queue_rebuilds = 0;
  std::size_t max_minset = 0;
  double validate_ms = 0;
  double cherry_ms = 0;
  double decompose_ms = 0;
  double main_loop_ms = 0;

  std::string to_text() const;
};

struct EngineResult {
  Verdict verdict = Verdict::kNo;
  RunTrace trace;
};

/// Decides whether `net` displays `t`. Throws InvalidInput when either input
/// is invalid, their label sets differ, or a label uses the reserved prefix.
EngineResult contains(const Network& net, const Tree& t, const EngineOptions& options = {});

/// Number of arcs on a longest path whose vertices other than the last are
/// reticulations; 0 for trees.
std::size_t max_reticulation_path(const Network& net);

}  // namespace tc
