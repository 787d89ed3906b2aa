#include "ac/conjugacy.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ac {

namespace {

// Rotations of the cyclic core of r. Attaching the circuit of a rotation at
// v also attaches, read backwards, the circuit of its inverse, so after
// folding this is the same completion as with the full symmetrized set.
std::vector<Word> rotations(const Word& r) {
  const Word core = cyclic_reduce(r).core;
  std::set<Word> out;
  for (std::size_t k = 0; k < core.size(); ++k) out.insert(core.rotate_left(k));
  return {out.begin(), out.end()};
}

struct HalfPath {
  Vertex end;
  Weight weight;
  std::uint64_t letters;  // letter i at bits 2i..2i+1
  std::uint8_t length;
  std::uint8_t last;
};

struct BinKey {
  Vertex end;
  std::uint8_t length;
  Weight weight;
  bool operator==(const BinKey&) const = default;
};

struct BinKeyHash {
  std::size_t operator()(const BinKey& k) const noexcept {
    std::uint64_t h = (std::uint64_t(k.end) << 8) ^ k.length;
    h ^= static_cast<std::uint64_t>(k.weight) * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

using Bins = std::unordered_map<BinKey, std::array<std::vector<std::uint32_t>, 4>, BinKeyHash>;

class Harvester {
 public:
  Harvester(const WeightedDigraph& g, const HarvestOptions& options)
      : adj_(g.adjacency()), modulus_(g.modulus()), options_(options),
        half_(static_cast<std::uint8_t>((options.max_length + 1) / 2)), removed_(adj_.size(), false) {
    if (options.max_length > 64) throw std::invalid_argument("harvest: max_length above 64");
  }

  HarvestResult run() {
    HarvestResult result;
    if (options_.max_length == 0) return result;
    const bool skip = options_.skip_flat_pivots && modulus_ != 1;
    for (Vertex pivot = 0; pivot < adj_.size(); ++pivot) {
      if (skip && flat(pivot)) continue;
      ++result.pivots;
      if (!collect(pivot)) result.truncated = true;
      result.paths += paths_.size();
      join(pivot);
      removed_[pivot] = true;
    }
    // Every rotation of a circuit label labels a circuit of the same weight.
    std::unordered_set<Word, WordHash> all;
    for (const Word& w : found_) {
      for (std::size_t k = 0; k < w.size(); ++k) all.insert(w.rotate_left(k));
    }
    result.words.assign(all.begin(), all.end());
    std::sort(result.words.begin(), result.words.end());
    return result;
  }

 private:
  bool flat(Vertex v) const {
    for (const auto& s : adj_[v]) {
      if (s.present() && s.weight != 0) return false;
    }
    return true;
  }

  // Depth-first enumeration of reduced paths of length 1..half_ from pivot
  // avoiding removed vertices. Returns false when the cap was hit.
  bool collect(Vertex pivot) {
    paths_.clear();
    bins_.clear();
    bool complete = true;
    struct Frame {
      HalfPath path;
      std::uint8_t next_label;
    };
    std::vector<Frame> stack;
    stack.push_back({{pivot, 0, 0, 0, 4}, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.path.length == half_ || top.next_label == 4) {
        stack.pop_back();
        continue;
      }
      const std::uint8_t l = top.next_label++;
      if (top.path.length > 0 && (top.path.last ^ 1u) == l) continue;
      const auto& slot = adj_[top.path.end][l];
      if (!slot.present() || removed_[slot.to]) continue;
      if (paths_.size() >= options_.bin_cap) {
        complete = false;
        break;
      }
      HalfPath next = top.path;
      next.end = slot.to;
      next.weight = reduce_weight(checked_add(next.weight, slot.weight), modulus_);
      next.letters |= std::uint64_t{l} << (2 * next.length);
      ++next.length;
      next.last = l;
      bins_[{next.end, next.length, next.weight}][l].push_back(static_cast<std::uint32_t>(paths_.size()));
      paths_.push_back(next);
      stack.push_back({next, 0});
    }
    return complete;
  }

  void emit(const HalfPath& p1, const HalfPath* p2) {
    Word w;
    for (std::uint8_t i = 0; i < p1.length; ++i) w.append(static_cast<Letter>((p1.letters >> (2 * i)) & 3u));
    if (p2 != nullptr) {
      for (std::uint8_t i = p2->length; i-- > 0;) {
        w.append(inverse(static_cast<Letter>((p2->letters >> (2 * i)) & 3u)));
      }
    }
    const Word core = cyclic_reduce(w).core;
    if (core.empty()) return;
    // One rotation per cyclic word; the rest are added in run().
    Word least = core;
    for (std::size_t k = 1; k < core.size(); ++k) least = std::min(least, core.rotate_left(k));
    found_.insert(std::move(least));
  }

  void join(Vertex pivot) {
    const Weight one = reduce_weight(1, modulus_);
    for (const HalfPath& p1 : paths_) {
      const Weight target = reduce_weight(checked_sub(p1.weight, one), modulus_);
      for (int dl = 0; dl <= 1; ++dl) {
        const std::size_t l2 = p1.length - dl;
        if (p1.length + l2 > options_.max_length) continue;
        if (l2 == 0) {
          if (p1.end == pivot && target == 0) emit(p1, nullptr);
          continue;
        }
        const auto it = bins_.find({p1.end, static_cast<std::uint8_t>(l2), target});
        if (it == bins_.end()) continue;
        for (int x2 = 0; x2 < 4; ++x2) {
          if (x2 == p1.last) continue;
          for (std::uint32_t idx : it->second[x2]) emit(p1, &paths_[idx]);
        }
      }
    }
  }

  WeightedDigraph::Adjacency adj_;
  Weight modulus_;
  HarvestOptions options_;
  std::uint8_t half_;
  std::vector<bool> removed_;
  std::vector<HalfPath> paths_;
  Bins bins_;
  std::unordered_set<Word, WordHash> found_;
};

}  // namespace

PseudoConjugacyGraph build_pcg(const Word& u, const Word& v, unsigned rounds, const BuildLimits& limits) {
  if (u.empty() || !u.is_cyclically_reduced()) throw std::invalid_argument("build_pcg: u must be cyclically reduced and nonempty");
  if (v.empty() || !v.is_cyclically_reduced()) throw std::invalid_argument("build_pcg: v must be cyclically reduced and nonempty");
  PseudoConjugacyGraph pcg{fold(loop_graph(u)), u, v, rounds};
  const std::vector<Word> relators = rotations(v);
  std::size_t relator_letters = 0;
  for (const Word& r : relators) relator_letters += r.size();
  for (unsigned round = 0; round < rounds; ++round) {
    const std::size_t projected = pcg.graph.vertex_count() * (1 + relator_letters);
    if (projected > limits.max_vertices) {
      throw GraphTooLarge("build_pcg: completion round " + std::to_string(round + 1) + " would create " +
                          std::to_string(projected) + " vertices");
    }
    pcg.graph = r_complete(pcg.graph, relators);
  }
  return pcg;
}

HarvestResult harvest(const WeightedDigraph& folded, const HarvestOptions& options) {
  return Harvester(folded, options).run();
}

bool carries_unit_circuit(const WeightedDigraph& folded, const Word& w) {
  const Word core = cyclic_reduce(w).core;
  if (core.empty()) return false;
  const auto adj = folded.adjacency();
  const Weight one = reduce_weight(1, folded.modulus());
  for (Vertex v = 0; v < adj.size(); ++v) {
    const auto end = read_path(adj, folded.modulus(), v, core);
    if (end && end->end == v && end->weight == one) return true;
  }
  return false;
}

std::optional<unsigned> min_rounds_for(const Word& u, const Word& v, const Word& w, unsigned max_rounds,
                                       const BuildLimits& limits) {
  auto pcg = build_pcg(u, v, 0, limits);
  const std::vector<Word> relators = rotations(v);
  std::size_t relator_letters = 0;
  for (const Word& r : relators) relator_letters += r.size();
  const Word w_inv = w.inverse();
  for (unsigned round = 0;; ++round) {
    if (carries_unit_circuit(pcg.graph, w) || carries_unit_circuit(pcg.graph, w_inv)) return round;
    if (round == max_rounds) return std::nullopt;
    if (pcg.graph.vertex_count() * (1 + relator_letters) > limits.max_vertices) {
      throw GraphTooLarge("min_rounds_for: completion round " + std::to_string(round + 1) + " too large");
    }
    pcg.graph = r_complete(pcg.graph, relators);
  }
}

HarvestResult acm_conjugates(const Word& u, const Word& v, std::size_t max_length, unsigned rounds,
                             const BuildLimits& limits) {
  const auto pcg = build_pcg(u, v, rounds, limits);
  HarvestOptions options;
  options.max_length = max_length;
  return harvest(pcg.graph, options);
}

std::vector<Word> acm_conjugate_classes(const Word& u, const Word& v, std::size_t max_length, unsigned rounds) {
  std::set<Word> classes;
  for (const Word& w : acm_conjugates(u, v, max_length, rounds).words) {
    classes.insert(least_cyclic_representative(w));
  }
  return {classes.begin(), classes.end()};
}

}  // namespace ac
