#include "ac/weighted_digraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace ac {

Weight checked_add(Weight a, Weight b) {
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) throw WeightOverflow("edge weight overflow");
  return r;
}

Weight checked_sub(Weight a, Weight b) {
  Weight r;
  if (__builtin_sub_overflow(a, b, &r)) throw WeightOverflow("edge weight overflow");
  return r;
}

Weight checked_neg(Weight a) { return checked_sub(0, a); }

Weight modulus_gcd(Weight modulus, Weight k) {
  if (k == std::numeric_limits<Weight>::min()) throw WeightOverflow("edge weight overflow");
  k = k < 0 ? -k : k;
  if (modulus == kInfiniteModulus) return k;
  return std::gcd(modulus, k);
}

Weight reduce_weight(Weight w, Weight modulus) {
  if (modulus == kInfiniteModulus) return w;
  Weight r = w % modulus;
  return r < 0 ? r + modulus : r;
}

namespace {

Edge orient(const WeightedDigraph::StoredEdge& e, bool forward, Weight modulus) {
  if (forward) return {e.tail, e.label, e.weight, e.head};
  return {e.head, inverse(e.label), reduce_weight(checked_neg(e.weight), modulus), e.tail};
}

}  // namespace

Vertex WeightedDigraph::add_vertex() {
  alive_.push_back(true);
  ++alive_count_;
  return static_cast<Vertex>(alive_.size() - 1);
}

void WeightedDigraph::add_edge(Vertex a, Letter label, Weight weight, Vertex b) {
  if (a >= alive_.size() || b >= alive_.size() || !alive_[a] || !alive_[b]) {
    throw std::out_of_range("add_edge: unknown vertex");
  }
  if (code(label) & 1u) {
    edges_.push_back({b, inverse(label), reduce_weight(checked_neg(weight), modulus_), a});
  } else {
    edges_.push_back({a, label, reduce_weight(weight, modulus_), b});
  }
}

void WeightedDigraph::attach_circuit(Vertex at, const Word& w, Weight first_weight) {
  if (w.empty()) return;
  Vertex prev = at;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vertex next = i + 1 == w.size() ? at : add_vertex();
    add_edge(prev, w[i], i == 0 ? first_weight : 0, next);
    prev = next;
  }
}

std::vector<Vertex> WeightedDigraph::vertices() const {
  std::vector<Vertex> out;
  out.reserve(alive_count_);
  for (Vertex v = 0; v < alive_.size(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<Edge> WeightedDigraph::oriented_edges() const {
  std::vector<Edge> out;
  out.reserve(2 * edges_.size());
  for (const auto& e : edges_) {
    out.push_back(orient(e, true, modulus_));
    out.push_back(orient(e, false, modulus_));
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.origin, a.label, a.terminus, a.weight) <
           std::tie(b.origin, b.label, b.terminus, b.weight);
  });
  return out;
}

std::vector<Edge> WeightedDigraph::out_edges(Vertex v) const {
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    if (e.tail == v) out.push_back(orient(e, true, modulus_));
    if (e.head == v) out.push_back(orient(e, false, modulus_));
  }
  return out;
}

void WeightedDigraph::set_modulus(Weight n) {
  modulus_ = n;
  for (auto& e : edges_) e.weight = reduce_weight(e.weight, modulus_);
}

void WeightedDigraph::shift(Vertex v, Weight delta) {
  if (delta == 0) return;
  for (auto& e : edges_) {
    if (e.tail == e.head) continue;
    if (e.tail == v) e.weight = reduce_weight(checked_add(e.weight, delta), modulus_);
    if (e.head == v) e.weight = reduce_weight(checked_sub(e.weight, delta), modulus_);
  }
}

void WeightedDigraph::identify(Vertex v1, Vertex v2) {
  if (v1 == v2) return;
  if (!alive_.at(v1) || !alive_.at(v2)) throw std::out_of_range("identify: unknown vertex");
  for (auto& e : edges_) {
    if (e.tail == v2) e.tail = v1;
    if (e.head == v2) e.head = v1;
  }
  alive_[v2] = false;
  --alive_count_;
  if (root_ == v2) root_ = v1;
}

void WeightedDigraph::remove_edge(std::size_t index) { edges_.erase(edges_.begin() + index); }

bool WeightedDigraph::is_folded() const {
  std::vector<std::array<bool, 4>> used(alive_.size(), {false, false, false, false});
  for (const auto& e : edges_) {
    auto& out = used[e.tail][code(e.label)];
    auto& in = used[e.head][code(inverse(e.label))];
    if (out || in) return false;
    out = in = true;
  }
  return true;
}

WeightedDigraph::Adjacency WeightedDigraph::adjacency() const {
  Adjacency adj(alive_.size());
  for (const auto& e : edges_) {
    auto& out = adj[e.tail][code(e.label)];
    auto& in = adj[e.head][code(inverse(e.label))];
    if (out.present() || in.present()) throw std::logic_error("adjacency: graph is not folded");
    out = {e.head, e.weight};
    in = {e.tail, reduce_weight(checked_neg(e.weight), modulus_)};
  }
  return adj;
}

std::string WeightedDigraph::dump() const {
  std::ostringstream os;
  os << "N=" << (modulus_ == kInfiniteModulus ? std::string("inf") : std::to_string(modulus_))
     << " root=" << root_ << '\n';
  for (const auto& e : edges_) {
    os << e.tail << ' ' << to_char(e.label) << ' ' << e.weight << ' ' << e.head << '\n';
  }
  return os.str();
}

UnionFindWithShifts::UnionFindWithShifts(std::size_t n) : parent_(n), delta_(n, 0), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
}

Vertex UnionFindWithShifts::add() {
  parent_.push_back(static_cast<Vertex>(parent_.size()));
  delta_.push_back(0);
  rank_.push_back(0);
  return parent_.back();
}

Vertex UnionFindWithShifts::find(Vertex v) {
  Vertex root = v;
  Weight total = 0;
  while (parent_[root] != root) {
    total = checked_add(total, delta_[root]);
    root = parent_[root];
  }
  // Second pass: every node on the path now stores its own total shift.
  for (Vertex w = v; parent_[w] != root && w != root;) {
    const Vertex next = parent_[w];
    const Weight own = delta_[w];
    delta_[w] = total;
    parent_[w] = root;
    total -= own;
    w = next;
  }
  return root;
}

Weight UnionFindWithShifts::total_shift(Vertex v) {
  const Vertex root = find(v);
  return v == root ? 0 : delta_[v];
}

Vertex UnionFindWithShifts::unite(Vertex a, Vertex b, Weight shift_b) {
  if (a == b) throw std::logic_error("unite: same class");
  if (rank_[a] < rank_[b]) {
    parent_[a] = b;
    delta_[a] = checked_neg(shift_b);
    return b;
  }
  parent_[b] = a;
  delta_[b] = shift_b;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return a;
}

void UnionFindWithShifts::reduce(Weight modulus) {
  if (modulus == kInfiniteModulus) return;
  for (auto& d : delta_) d = reduce_weight(d, modulus);
}

// Worklist folding over vertex classes. Edges are kept with their original
// endpoints; the current weight of a stored edge is
//   weight + total_shift(tail) - total_shift(head).
class Folder {
 public:
  explicit Folder(const WeightedDigraph& g)
      : g_(g), uf_(g.vertex_capacity()), slots_(g.vertex_capacity()), alias_(g.edges_.size()),
        modulus_(g.modulus_) {
    std::iota(alias_.begin(), alias_.end(), std::uint32_t{0});
    for (auto& s : slots_) s.fill(kEmpty);
    for (std::uint32_t e = 0; e < g.edges_.size(); ++e) {
      const auto& se = g.edges_[e];
      place(se.tail, se.label, e);
      place(se.head, inverse(se.label), e);
    }
  }

  WeightedDigraph run(FoldStats* stats) {
    while (!work_.empty()) {
      const Conflict c = work_.front();
      work_.pop_front();
      ++stats_.conflicts;
      resolve(c);
    }
    if (stats) *stats = stats_;
    return materialize();
  }

 private:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  struct Conflict {
    std::uint32_t kept;
    std::uint32_t other;
    Letter label;
  };

  struct Oriented {
    Vertex terminus;
    Weight weight;
  };

  std::uint32_t edge_find(std::uint32_t e) {
    while (alias_[e] != e) {
      alias_[e] = alias_[alias_[e]];
      e = alias_[e];
    }
    return e;
  }

  void place(Vertex v, Letter label, std::uint32_t e) {
    auto& slot = slots_[v][code(label)];
    if (slot == kEmpty) {
      slot = e;
    } else {
      work_.push_back({slot, e, label});
    }
  }

  Oriented oriented(std::uint32_t e, Letter label) {
    const auto& se = g_.edges_[e];
    Weight w = checked_add(se.weight, checked_sub(uf_.total_shift(se.tail), uf_.total_shift(se.head)));
    w = reduce_weight(w, modulus_);
    if (se.label == label) return {se.head, w};
    return {se.tail, reduce_weight(checked_neg(w), modulus_)};
  }

  void resolve(const Conflict& c) {
    const std::uint32_t e1 = edge_find(c.kept);
    const std::uint32_t e2 = edge_find(c.other);
    if (e1 == e2) return;
    const Oriented o1 = oriented(e1, c.label);
    const Oriented o2 = oriented(e2, c.label);
    const Vertex t1 = uf_.find(o1.terminus);
    const Vertex t2 = uf_.find(o2.terminus);
    const Weight diff = checked_sub(o2.weight, o1.weight);
    if (t1 == t2) {
      if (reduce_weight(diff, modulus_) != 0) {
        modulus_ = modulus_gcd(modulus_, diff);
        uf_.reduce(modulus_);
      }
      alias_[e2] = e1;
      return;
    }
    ++stats_.merges;
    // Shifting the class of t2 by diff equalizes the two edges.
    const Vertex winner = uf_.unite(t1, t2, reduce_weight(diff, modulus_));
    const Vertex loser = winner == t1 ? t2 : t1;
    alias_[e2] = e1;
    for (int l = 0; l < 4; ++l) {
      const std::uint32_t moved = slots_[loser][l];
      if (moved == kEmpty) continue;
      auto& slot = slots_[winner][l];
      if (slot == kEmpty) {
        slot = moved;
      } else {
        work_.push_back({slot, moved, static_cast<Letter>(l)});
      }
      slots_[loser][l] = kEmpty;
    }
  }

  WeightedDigraph materialize() {
    WeightedDigraph out;
    out.modulus_ = modulus_;
    std::vector<Vertex> renumber(g_.alive_.size(), kNoVertex);
    for (Vertex v = 0; v < g_.alive_.size(); ++v) {
      if (!g_.alive_[v]) continue;
      const Vertex r = uf_.find(v);
      if (renumber[r] == kNoVertex) renumber[r] = out.add_vertex();
    }
    out.root_ = g_.alive_.empty() ? 0 : renumber[uf_.find(g_.root_)];
    for (std::uint32_t e = 0; e < g_.edges_.size(); ++e) {
      if (edge_find(e) != e) continue;
      const auto& se = g_.edges_[e];
      const Oriented o = oriented(e, se.label);
      out.edges_.push_back({renumber[uf_.find(se.tail)], se.label, o.weight, renumber[uf_.find(o.terminus)]});
    }
    return out;
  }

  const WeightedDigraph& g_;
  UnionFindWithShifts uf_;
  std::vector<std::array<std::uint32_t, 4>> slots_;
  std::vector<std::uint32_t> alias_;
  std::deque<Conflict> work_;
  Weight modulus_;
  FoldStats stats_;
};

WeightedDigraph fold(const WeightedDigraph& g, FoldStats* stats) { return Folder(g).run(stats); }

WeightedDigraph naive_fold(const WeightedDigraph& input) {
  WeightedDigraph g = input;
  for (;;) {
    // First vertex/label with two outgoing edges, by stored-edge order.
    bool found = false;
    std::size_t i1 = 0, i2 = 0;
    bool f1 = true, f2 = true;
    for (Vertex v = 0; v < g.vertex_capacity() && !found; ++v) {
      if (!g.alive(v)) continue;
      for (int l = 0; l < 4 && !found; ++l) {
        const Letter label = static_cast<Letter>(l);
        int hits = 0;
        const auto& edges = g.stored_edges();
        for (std::size_t i = 0; i < edges.size() && hits < 2; ++i) {
          const auto& e = edges[i];
          const bool forward = e.tail == v && e.label == label;
          const bool backward = e.head == v && inverse(e.label) == label;
          if (!forward && !backward) continue;
          (hits == 0 ? i1 : i2) = i;
          (hits == 0 ? f1 : f2) = forward;
          ++hits;
        }
        found = hits == 2;
      }
    }
    if (!found) break;

    const Edge e1 = orient(g.stored_edges()[i1], f1, g.modulus());
    const Edge e2 = orient(g.stored_edges()[i2], f2, g.modulus());
    if (e1.terminus == e2.terminus) {
      const Weight diff = checked_sub(e2.weight, e1.weight);
      if (reduce_weight(diff, g.modulus()) != 0) g.set_modulus(modulus_gcd(g.modulus(), diff));
      g.remove_edge(i2);
    } else {
      g.shift(e1.terminus, checked_sub(e1.weight, e2.weight));
      g.remove_edge(i2);
      g.identify(e1.terminus, e2.terminus);
    }
  }
  // Renumber to 0..k-1 in id order, like fold().
  WeightedDigraph out;
  out.set_modulus(g.modulus());
  std::vector<Vertex> renumber(g.vertex_capacity(), kNoVertex);
  for (Vertex v = 0; v < g.vertex_capacity(); ++v) {
    if (g.alive(v)) renumber[v] = out.add_vertex();
  }
  out.set_root(g.vertex_capacity() == 0 ? 0 : renumber[g.root()]);
  for (const auto& e : g.stored_edges()) out.add_edge(renumber[e.tail], e.label, e.weight, renumber[e.head]);
  return out;
}

WeightedDigraph loop_graph(const Word& u) {
  if (u.empty()) throw std::invalid_argument("loop_graph: empty word");
  if (!u.is_cyclically_reduced()) throw std::invalid_argument("loop_graph: word is not cyclically reduced");
  WeightedDigraph g;
  const Vertex root = g.add_vertex();
  g.set_root(root);
  g.attach_circuit(root, u, 1);
  return g;
}

std::vector<Word> symmetrize(const Word& r) {
  const Word core = cyclic_reduce(r).core;
  std::set<Word> out;
  const Word inv = core.inverse();
  for (std::size_t k = 0; k < core.size(); ++k) {
    out.insert(core.rotate_left(k));
    out.insert(inv.rotate_left(k));
  }
  return {out.begin(), out.end()};
}

WeightedDigraph r_complete(const WeightedDigraph& g, std::span<const Word> relators) {
  WeightedDigraph h = g;
  for (const Vertex v : g.vertices()) {
    for (const Word& r : relators) h.attach_circuit(v, r, 0);
  }
  return fold(h);
}

std::optional<PathEnd> read_path(const WeightedDigraph::Adjacency& adj, Weight modulus, Vertex start,
                                 const Word& w) {
  Vertex at = start;
  Weight total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& slot = adj[at][code(w[i])];
    if (!slot.present()) return std::nullopt;
    total = reduce_weight(checked_add(total, slot.weight), modulus);
    at = slot.to;
  }
  return PathEnd{at, total};
}

}  // namespace ac
