#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ac/weighted_digraph.hpp"
#include "ac/word.hpp"

namespace ac {

inline constexpr unsigned kDefaultRounds = 2;

// Folded weighted graph in which every circuit l satisfies
// label(l) ~ u^weight(l) in <x, y | relator>, and u^N = 1 for finite N.
struct PseudoConjugacyGraph {
  WeightedDigraph graph;
  Word base_word;
  Word relator;
  unsigned rounds = 0;
};

struct BuildLimits {
  // build_pcg throws GraphTooLarge once an intermediate graph exceeds this.
  std::size_t max_vertices = 20'000'000;
};

class GraphTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Loop(u) completed `rounds` times with the symmetrized relator, folded
// after every round.
PseudoConjugacyGraph build_pcg(const Word& u, const Word& v, unsigned rounds,
                               const BuildLimits& limits = {});

struct HarvestOptions {
  std::size_t max_length = 0;
  // Per-pivot cap on enumerated half-paths.
  std::size_t bin_cap = 10'000'000;
  // Pivots with only zero-weight incident edges cannot start a weight-1
  // circuit (unless N = 1) and are skipped.
  bool skip_flat_pivots = true;
};

struct HarvestResult {
  std::vector<Word> words;  // cyclically reduced, deduplicated, shortlex sorted
  bool truncated = false;
  std::size_t pivots = 0;
  std::size_t paths = 0;
};

// All cyclically reduced labels of weight-1 (mod N) circuits of length at
// most max_length, via half-path bins joined at each pivot.
HarvestResult harvest(const WeightedDigraph& folded, const HarvestOptions& options);

// Direct membership: does some vertex carry a weight-1 circuit reading the
// cyclic reduction of w (or a rotation of it)?
bool carries_unit_circuit(const WeightedDigraph& folded, const Word& w);

// Least D <= max_rounds at which the completed graph carries a weight-1
// circuit reading the cyclic reduction of w or of w^-1, if any.
std::optional<unsigned> min_rounds_for(const Word& u, const Word& v, const Word& w, unsigned max_rounds,
                                       const BuildLimits& limits = {});

// U_D(u, v): bounded conjugates of u in <x, y | v> produced by D rounds of
// completion. The output contains every rotation of each conjugate.
HarvestResult acm_conjugates(const Word& u, const Word& v, std::size_t max_length,
                             unsigned rounds = kDefaultRounds, const BuildLimits& limits = {});

// Same set collapsed to least cyclic representatives (rotation and
// inversion classes).
std::vector<Word> acm_conjugate_classes(const Word& u, const Word& v, std::size_t max_length,
                                        unsigned rounds = kDefaultRounds);

}  // namespace ac
