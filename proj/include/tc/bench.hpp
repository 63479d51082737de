#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tc {

enum class BenchFamily { kReticulationVisible, kTree, kChain };

BenchFamily parse_bench_family(const std::string& text);

struct BenchConfig {
  BenchFamily family = BenchFamily::kReticulationVisible;
  /// Target network sizes in vertices; actual sizes are within a few vertices.
  std::vector<std::size_t> sizes;
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
  /// Reticulations per chain for BenchFamily::kChain.
  std::size_t chain_length = 2;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string network_class;
  double median_ns = 0;
  double ns_per_vertex = 0;
  /// Largest tip total over the repetitions; not part of the CSV.
  std::size_t tip_total = 0;
};

/// First line of the CSV output; bump the version when columns change.
inline constexpr const char* kBenchCsvVersion = "# tc-bench v1";
std::string bench_csv_header();
std::string to_csv(const BenchRow& row);

/// Times the engine on a planted displayed tree for every size. Throws
/// std::logic_error if the engine ever rejects a planted tree.
std::vector<BenchRow> run_bench(const BenchConfig& config,
                                const std::function<void(const BenchRow&)>& on_row = {});

/// Powers of two from 2^lo to 2^hi.
std::vector<std::size_t> size_ladder(unsigned lo, unsigned hi);

}  // namespace tc
