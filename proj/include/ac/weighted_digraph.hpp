#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ac/word.hpp"

namespace ac {

using Weight = std::int64_t;
using Vertex = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
// Modulus value standing for N = infinity.
inline constexpr Weight kInfiniteModulus = 0;

class WeightOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

Weight checked_add(Weight a, Weight b);
Weight checked_sub(Weight a, Weight b);
Weight checked_neg(Weight a);
// gcd with the infinity sentinel: gcd(inf, k) = |k|.
Weight modulus_gcd(Weight modulus, Weight k);
// Canonical residue in [0, N) for finite N; identity for N = inf.
Weight reduce_weight(Weight w, Weight modulus);

// Oriented view of an edge.
struct Edge {
  Vertex origin;
  Letter label;
  Weight weight;
  Vertex terminus;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Inverse weighted X-digraph. Every stored edge carries a positive label
// (x or y); its inverse (label^-1, -weight) is implied, so the graph is
// inverse-closed by construction.
class WeightedDigraph {
 public:
  struct StoredEdge {
    Vertex tail;
    Letter label;  // x or y
    Weight weight;
    Vertex head;
  };

  // Outgoing slot of a folded graph.
  struct Slot {
    Vertex to = kNoVertex;
    Weight weight = 0;
    bool present() const noexcept { return to != kNoVertex; }
  };
  using Adjacency = std::vector<std::array<Slot, 4>>;

  WeightedDigraph() = default;

  Vertex add_vertex();
  // Adds a -(label, weight)-> b together with its inverse.
  void add_edge(Vertex a, Letter label, Weight weight, Vertex b);
  // Attaches a closed path labelled `w` at `at`; the first edge carries
  // `first_weight`, all others 0. Creates |w| - 1 fresh vertices.
  void attach_circuit(Vertex at, const Word& w, Weight first_weight);

  std::size_t vertex_capacity() const noexcept { return alive_.size(); }
  std::size_t vertex_count() const noexcept { return alive_count_; }
  bool alive(Vertex v) const { return alive_.at(v); }
  std::vector<Vertex> vertices() const;

  const std::vector<StoredEdge>& stored_edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  // Both orientations of every stored edge, sorted by (origin, label, terminus, weight).
  std::vector<Edge> oriented_edges() const;
  std::vector<Edge> out_edges(Vertex v) const;

  Weight modulus() const noexcept { return modulus_; }
  void set_modulus(Weight n);
  Vertex root() const noexcept { return root_; }
  void set_root(Vertex v) { root_ = v; }

  // Adds delta to every non-loop edge leaving v, subtracts it from every
  // non-loop edge entering v.
  void shift(Vertex v, Weight delta);
  // Re-hangs all edges of v2 on v1 and deletes v2. No-op when v1 == v2.
  void identify(Vertex v1, Vertex v2);
  void remove_edge(std::size_t index);

  bool is_folded() const;
  // Slot table; throws std::logic_error when the graph is not folded.
  Adjacency adjacency() const;

  // "N=<modulus> root=<id>" followed by one "origin label weight terminus"
  // line per stored edge.
  std::string dump() const;

 private:
  friend class Folder;

  std::vector<bool> alive_;
  std::size_t alive_count_ = 0;
  std::vector<StoredEdge> edges_;
  Weight modulus_ = kInfiniteModulus;
  Vertex root_ = 0;
};

// Shift-carrying union-find. total_shift(v) = 0 for a root, otherwise
// delta(v) + total_shift(parent(v)); find() compresses paths and keeps
// every total shift intact.
class UnionFindWithShifts {
 public:
  explicit UnionFindWithShifts(std::size_t n = 0);

  Vertex add();
  std::size_t size() const noexcept { return parent_.size(); }
  Vertex find(Vertex v);
  Weight total_shift(Vertex v);
  // Merges the classes of roots a and b so that the class of b ends up
  // shifted by `shift_b` relative to the class of a. Returns the new root.
  Vertex unite(Vertex a, Vertex b, Weight shift_b);
  // Reduces every stored shift modulo a finite modulus.
  void reduce(Weight modulus);

 private:
  std::vector<Vertex> parent_;
  std::vector<Weight> delta_;
  std::vector<std::uint8_t> rank_;
};

struct FoldStats {
  std::size_t merges = 0;
  std::size_t conflicts = 0;
};

// Near-linear folding. The result has vertices renumbered 0..k-1 in order
// of their smallest original id.
WeightedDigraph fold(const WeightedDigraph& g, FoldStats* stats = nullptr);
// Eager reference folding: performs every shift immediately and identifies
// vertices one pair at a time.
WeightedDigraph naive_fold(const WeightedDigraph& g);

WeightedDigraph loop_graph(const Word& u);

// All rotations of the cyclic reduction of r and of its inverse.
std::vector<Word> symmetrize(const Word& r);

// Attaches a weight-0 circuit for every relator at every vertex of g, then folds.
WeightedDigraph r_complete(const WeightedDigraph& g, std::span<const Word> relators);

// Follows `w` from `start` in a folded graph. Returns the end vertex and the
// accumulated weight, or nullopt if the path leaves the graph.
struct PathEnd {
  Vertex end;
  Weight weight;
};
std::optional<PathEnd> read_path(const WeightedDigraph::Adjacency& adj, Weight modulus,
                                 Vertex start, const Word& w);

}  // namespace ac
