#include "tc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "tc/engine.hpp"
#include "tc/generator.hpp"
#include "tc/stability.hpp"

namespace tc {

BenchFamily parse_bench_family(const std::string& text) {
  if (text == "rv") return BenchFamily::kReticulationVisible;
  if (text == "tree") return BenchFamily::kTree;
  if (text == "chain") return BenchFamily::kChain;
  throw std::invalid_argument("unknown benchmark family '" + text + "' (expected rv, tree or chain)");
}

std::string bench_csv_header() { return std::string(kBenchCsvVersion) + "\nn,k,class,median_ns,ns_per_vertex"; }

std::string to_csv(const BenchRow& row) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << row.n << ',' << row.k << ',' << row.network_class << ',' << row.median_ns << ',';
  out.precision(3);
  out << row.ns_per_vertex;
  return out.str();
}

std::vector<std::size_t> size_ladder(unsigned lo, unsigned hi) {
  std::vector<std::size_t> out;
  for (unsigned e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
  return out;
}

namespace {

Network make_network(const BenchConfig& config, std::size_t size, std::uint64_t seed) {
  switch (config.family) {
    case BenchFamily::kTree:
      return gen_tree(seed, std::max<std::size_t>(2, (size + 1) / 2));
    case BenchFamily::kReticulationVisible: {
      // 2n - 1 tree vertices plus two per reticulation, with n/4 reticulations.
      const std::size_t n = std::max<std::size_t>(4, (2 * size + 2) / 5);
      return gen_layered_rv_network(seed, n, n / 4);
    }
    case BenchFamily::kChain: {
      const std::size_t per_chain = 2 * config.chain_length;
      const std::size_t n = std::max<std::size_t>(8, 8 * (size + 1) / (16 + per_chain));
      return gen_chain_network(seed, n, n / 8, config.chain_length);
    }
  }
  throw std::logic_error("unknown benchmark family");
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config, const std::function<void(const BenchRow&)>& on_row) {
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  EngineOptions options;
  options.record_events = false;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    const std::uint64_t seed = config.seed * 1000003 + i;
    const Network net = make_network(config, config.sizes[i], seed);
    const Tree t = gen_displayed_tree(seed ^ 0x5bd1e995, net);
    std::vector<double> samples;
    std::size_t tip_total = 0;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, config.repetitions); ++r) {
      const auto start = Clock::now();
      const EngineResult result = contains(net, t, options);
      samples.push_back(std::chrono::duration<double, std::nano>(Clock::now() - start).count());
      if (result.verdict != Verdict::kYes)
        throw std::logic_error("engine rejected a planted tree at size " + std::to_string(net.vertex_count()) +
                               ": " + result.trace.message);
      tip_total = std::max(tip_total, result.trace.tip_total);
    }
    std::sort(samples.begin(), samples.end());
    BenchRow row;
    row.n = net.vertex_count();
    row.k = max_reticulation_path(net);
    row.network_class = to_string(classify(net));
    row.median_ns = samples[samples.size() / 2];
    row.ns_per_vertex = row.median_ns / static_cast<double>(row.n);
    row.tip_total = tip_total;
    if (on_row) on_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tc
