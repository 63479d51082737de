#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tc/network.hpp"

namespace tc {

/// Seeded source of randomness with a fixed algorithm: std::mt19937_64 (whose
/// output sequence the C++ standard pins down) plus rejection-sampled bounded
/// integers, so instances are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ClassTarget { kAny, kReticulationVisible, kNearlyStable, kTheorem2 };

std::string to_string(ClassTarget c);
/// Accepts "any", "rv", "ns", "t2" and the long names printed by to_string.
ClassTarget parse_class_target(const std::string& text);

/// Random binary tree with leaves "t0", "t1", ... built by joining random pairs.
Tree gen_tree(std::uint64_t seed, std::size_t n_leaves);

/// Random binary network grown from a random tree by repeatedly joining the
/// subdivision points of two arcs. Each step is checked against `target` and
/// undone when it fails; throws GeneratorError after `retry_budget` failures.
Network gen_network(std::uint64_t seed, std::size_t n_leaves, std::size_t n_reticulations,
                    ClassTarget target = ClassTarget::kAny, std::size_t retry_budget = 1000);

/// Reticulation-visible network built in linear time. A random set of tree
/// vertices z each get one reticulation w on the arc from z to one child; the
/// second parent of w subdivides an arc inside the subtree of z's other
/// child. Every reticulation keeps a reticulation-free path to a leaf.
Network gen_layered_rv_network(std::uint64_t seed, std::size_t n_leaves, std::size_t n_reticulations);

/// Network in which each of `n_chains` distinct leaves sits below a path of
/// `chain_length` reticulations. Built in time linear in the output without
/// per-step checks. chain_length 1 gives a reticulation-visible network; every
/// tree vertex with a reticulation parent is a leaf, so the result always has
/// stable tree vertices below reticulations.
Network gen_chain_network(std::uint64_t seed, std::size_t n_leaves, std::size_t n_chains,
                          std::size_t chain_length = 1);

/// A tree displayed by `net`, read off a random resolution.
Tree gen_displayed_tree(std::uint64_t seed, const Network& net);

/// `t` after one random leaf-label swap or subtree prune-and-regraft. The result
/// may or may not still be displayed by any given network. Needs 4 leaves.
Tree gen_perturbed_tree(std::uint64_t seed, const Tree& t);

}  // namespace tc
