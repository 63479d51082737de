// tcheck: command-line front end for tree containment.
//
// Exit codes: 0 YES, 1 NO, 2 error or unsupported input.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tc/bench.hpp"
#include "tc/engine.hpp"
#include "tc/generator.hpp"
#include "tc/newick.hpp"
#include "tc/oracle.hpp"
#include "tc/stability.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text << '\n';
}

struct CheckArgs {
  std::string network_path;
  std::string tree_path;
  bool strict = false;
  bool oracle = false;
  bool trace = false;
  std::size_t oracle_bound = tc::kDefaultReticulationBound;
  std::optional<std::uint64_t> seed;
};

int cmd_check(const CheckArgs& args) {
  if (args.network_path == "-" && args.tree_path == "-") throw std::runtime_error("only one input can be read from stdin");
  const tc::Network net = tc::parse_network(read_input(args.network_path));
  const tc::Tree t = tc::parse_tree(read_input(args.tree_path));

  tc::EngineOptions options;
  options.strict = args.strict;
  options.order_seed = args.seed;
  options.record_events = args.trace;
  const tc::EngineResult result = tc::contains(net, t, options);

  std::cout << tc::to_string(result.verdict);
  if (!result.trace.message.empty()) std::cout << " (" << result.trace.message << ')';
  std::cout << '\n';
  if (args.trace) std::cout << result.trace.to_text() << '\n';

  if (args.oracle) {
    bool expected = false;
    try {
      expected = tc::oracle_displays(net, t, args.oracle_bound);
    } catch (const tc::OracleRefusal& e) {
      std::cerr << "oracle refused: " << e.what() << '\n';
      return kExitError;
    }
    std::cout << "oracle: " << (expected ? "YES" : "NO") << '\n';
    if (result.verdict != tc::Verdict::kUnsupported && (result.verdict == tc::Verdict::kYes) != expected) {
      std::cerr << "engine and oracle disagree\n";
      return kExitError;
    }
  }

  switch (result.verdict) {
    case tc::Verdict::kYes: return kExitYes;
    case tc::Verdict::kNo: return kExitNo;
    case tc::Verdict::kUnsupported: return kExitError;
  }
  return kExitError;
}

int cmd_classify(const std::string& path) {
  const tc::Network net = tc::parse_network(read_input(path));
  const tc::ValidationReport report = tc::validate(net);
  if (!report.ok()) throw tc::InvalidInput("invalid network: " + report.summary());
  const tc::ClassReport cls = tc::classify_detailed(net);
  const std::size_t k = net.reticulation_count();
  const std::size_t path_length = tc::max_reticulation_path(net);
  if (cls.network_class == tc::NetworkClass::kUnsupported) {
    std::cout << "unsupported (tree vertex " << tc::index_of(cls.failing_vertex)
              << " has a reticulation parent and is not stable), k=" << k << ", path=" << path_length << '\n';
    return kExitYes;
  }
  std::cout << tc::to_string(cls.network_class) << ", k=" << k << ", path=" << path_length << '\n';
  return kExitYes;
}

struct GenArgs {
  std::size_t leaves = 10;
  std::size_t reticulations = 0;
  std::string network_class = "any";
  std::string shape = "grow";
  std::size_t chain_length = 1;
  std::uint64_t seed = 1;
  bool perturb = false;
  std::string network_out;
  std::string tree_out;
};

int cmd_gen(const GenArgs& args) {
  tc::Network net;
  if (args.shape == "grow") {
    net = tc::gen_network(args.seed, args.leaves, args.reticulations, tc::parse_class_target(args.network_class));
  } else if (args.shape == "layered") {
    net = tc::gen_layered_rv_network(args.seed, args.leaves, args.reticulations);
  } else if (args.shape == "chain") {
    net = tc::gen_chain_network(args.seed, args.leaves, args.reticulations, args.chain_length);
  } else {
    throw std::invalid_argument("unknown shape '" + args.shape + "' (expected grow, layered or chain)");
  }
  tc::Tree t = tc::gen_displayed_tree(args.seed + 1, net);
  if (args.perturb) t = tc::gen_perturbed_tree(args.seed + 2, t);
  write_output(args.network_out, tc::serialize_network(net));
  write_output(args.tree_out, tc::serialize_network(t));
  return kExitYes;
}

struct BenchArgs {
  std::string family = "rv";
  unsigned min_exp = 10;
  unsigned max_exp = 16;
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
  std::size_t chain_length = 2;
};

int cmd_bench(const BenchArgs& args) {
  if (args.min_exp > args.max_exp) throw std::invalid_argument("--min-exp exceeds --max-exp");
  tc::BenchConfig config;
  config.family = tc::parse_bench_family(args.family);
  config.sizes = tc::size_ladder(args.min_exp, args.max_exp);
  config.repetitions = args.repetitions;
  config.seed = args.seed;
  config.chain_length = args.chain_length;
  std::cout << tc::bench_csv_header() << '\n' << std::flush;
  tc::run_bench(config, [](const tc::BenchRow& row) { std::cout << tc::to_csv(row) << '\n' << std::flush; });
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree containment in phylogenetic networks"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Decide whether a network displays a tree");
  check_cmd->add_option("network", check.network_path, "eNewick network file, or - for stdin")->required();
  check_cmd->add_option("tree", check.tree_path, "Newick tree file, or - for stdin")->required();
  check_cmd->add_flag("--strict", check.strict, "Refuse networks outside the supported class before running");
  check_cmd->add_flag("--oracle", check.oracle, "Cross-check against exhaustive enumeration");
  check_cmd->add_option("--oracle-bound", check.oracle_bound, "Largest reticulation count the oracle accepts");
  check_cmd->add_option("--seed", check.seed, "Shuffle processing order");
  check_cmd->add_flag("--trace", check.trace, "Print the run trace");

  std::string classify_path;
  auto* classify_cmd = app.add_subcommand("classify", "Report the class of a network");
  classify_cmd->add_option("network", classify_path, "eNewick network file, or - for stdin")->required();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a network and a tree");
  gen_cmd->add_option("--leaves", gen.leaves, "Number of leaves");
  gen_cmd->add_option("--rets", gen.reticulations, "Reticulations (chains for --shape chain)");
  gen_cmd->add_option("--class", gen.network_class, "any, rv, ns or t2 (grow shape only)");
  gen_cmd->add_option("--shape", gen.shape, "grow, layered or chain");
  gen_cmd->add_option("--chain-length", gen.chain_length, "Reticulations per chain");
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_flag("--perturb", gen.perturb, "Perturb the displayed tree");
  gen_cmd->add_option("--network-out", gen.network_out, "Network output file (default stdout)");
  gen_cmd->add_option("--tree-out", gen.tree_out, "Tree output file (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the engine over a size ladder and print CSV");
  bench_cmd->add_option("--family", bench.family, "rv, tree or chain");
  bench_cmd->add_option("--min-exp", bench.min_exp, "Smallest size as a power of two");
  bench_cmd->add_option("--max-exp", bench.max_exp, "Largest size as a power of two");
  bench_cmd->add_option("--reps", bench.repetitions, "Repetitions per size");
  bench_cmd->add_option("--seed", bench.seed, "64-bit seed");
  bench_cmd->add_option("--chain-length", bench.chain_length, "Reticulations per chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*check_cmd) return cmd_check(check);
    if (*classify_cmd) return cmd_classify(classify_path);
    if (*gen_cmd) return cmd_gen(gen);
    if (*bench_cmd) return cmd_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
