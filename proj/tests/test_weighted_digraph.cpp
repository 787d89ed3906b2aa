#include <doctest.h>

#include <map>

#include "ac/conjugacy.hpp"
#include "ac/weighted_digraph.hpp"
#include "support.hpp"

using namespace ac;
using testing::word;

namespace {

Weight circuit_weight(const WeightedDigraph& folded, Vertex v, const Word& w) {
  const auto end = read_path(folded.adjacency(), folded.modulus(), v, w);
  REQUIRE(end);
  REQUIRE(end->end == v);
  return end->weight;
}

// Root-anchored canonical form: BFS renumbering in label order and weights
// normalized so that BFS tree edges carry 0.
std::vector<std::tuple<Vertex, int, Weight, Vertex>> canonical(const WeightedDigraph& g) {
  const auto adj = g.adjacency();
  const Weight n = g.modulus();
  std::vector<Vertex> order(adj.size(), kNoVertex);
  std::vector<Weight> potential(adj.size(), 0);
  std::vector<Vertex> queue{g.root()};
  order[g.root()] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Vertex v = queue[i];
    for (int l = 0; l < 4; ++l) {
      const auto& s = adj[v][l];
      if (!s.present() || order[s.to] != kNoVertex) continue;
      order[s.to] = static_cast<Vertex>(queue.size());
      potential[s.to] = potential[v] + s.weight;
      queue.push_back(s.to);
    }
  }
  std::vector<std::tuple<Vertex, int, Weight, Vertex>> out;
  for (Vertex v : queue) {
    for (int l = 0; l < 4; ++l) {
      const auto& s = adj[v][l];
      if (s.present()) out.emplace_back(order[v], l, reduce_weight(s.weight + potential[v] - potential[s.to], n), order[s.to]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random walk from the root closed by a shortest path back.
std::pair<Word, Weight> random_root_circuit(testing::Rng& rng, const WeightedDigraph& g, std::size_t steps) {
  std::map<Vertex, std::vector<Edge>> out;
  for (const auto& e : g.oriented_edges()) out[e.origin].push_back(e);
  std::vector<Letter> letters;
  Weight w = 0;
  Vertex at = g.root();
  for (std::size_t i = 0; i < steps && !out[at].empty(); ++i) {
    const Edge e = out[at][rng() % out[at].size()];
    letters.push_back(e.label);
    w += e.weight;
    at = e.terminus;
  }
  std::map<Vertex, Edge> via;
  std::vector<Vertex> queue{at};
  via.emplace(at, Edge{});
  for (std::size_t i = 0; i < queue.size() && !via.count(g.root()); ++i) {
    for (const Edge& e : out[queue[i]]) {
      if (via.emplace(e.terminus, e).second) queue.push_back(e.terminus);
    }
  }
  std::vector<Edge> back;
  for (Vertex v = g.root(); v != at; v = via.at(v).origin) back.push_back(via.at(v));
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    letters.push_back(it->label);
    w += it->weight;
  }
  return {Word::from_letters(letters), w};
}

}  // namespace

TEST_CASE("loop graph") {
  const WeightedDigraph g = loop_graph(word("xy"));
  CHECK(g.vertex_count() == 2);
  const WeightedDigraph f = fold(g);
  CHECK(circuit_weight(f, f.root(), word("xy")) == 1);
  CHECK(fold(loop_graph(word("x"))).edge_count() == 1);
  const WeightedDigraph ak = fold(loop_graph(word("xyxYXY")));
  CHECK(ak.vertex_count() == 6);
  CHECK(circuit_weight(ak, ak.root(), word("xyxYXY")) == 1);
  CHECK(circuit_weight(ak, ak.root(), word("xyxYXY").inverse()) == -1);
  CHECK(circuit_weight(ak, ak.root(), word("xyxYXY").power(3)) == 3);
  CHECK_THROWS(loop_graph(Word{}));
  CHECK_THROWS(loop_graph(word("xyX")));
}

TEST_CASE("shift") {
  WeightedDigraph g;
  const Vertex a = g.add_vertex(), b = g.add_vertex();
  g.add_edge(a, Letter::x, 3, b);
  const std::string before = g.dump();
  g.shift(a, 0);
  CHECK(g.dump() == before);
  g.shift(a, 2);
  const auto e = g.oriented_edges();
  CHECK(std::count(e.begin(), e.end(), Edge{a, Letter::x, 5, b}) == 1);
  CHECK(std::count(e.begin(), e.end(), Edge{b, Letter::X, -5, a}) == 1);

  testing::Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    WeightedDigraph r = testing::random_graph(rng, 1 + rng() % 8, rng() % 8, 3);
    const auto [w, weight] = random_root_circuit(rng, r, 6);
    for (int s = 0; s < 4; ++s) r.shift(static_cast<Vertex>(rng() % r.vertex_count()), static_cast<Weight>(rng() % 7) - 3);
    const WeightedDigraph f = fold(r);
    if (f.modulus() == kInfiniteModulus && !w.empty()) {
      const auto end = read_path(f.adjacency(), f.modulus(), f.root(), w);
      REQUIRE(end);
      CHECK(end->weight == reduce_weight(weight, f.modulus()));
    }
  }
}

TEST_CASE("shift keeps self-loops and circuit weights") {
  WeightedDigraph g;
  const Vertex a = g.add_vertex(), b = g.add_vertex();
  g.add_edge(a, Letter::y, 4, a);
  g.add_edge(a, Letter::x, 1, b);
  g.add_edge(b, Letter::x, 2, a);
  g.shift(a, 5);
  const WeightedDigraph f = fold(g);
  CHECK(circuit_weight(f, 0, word("y")) == 4);
  CHECK(circuit_weight(f, 0, word("xx")) == 3);
}

TEST_CASE("identify") {
  WeightedDigraph g;
  const Vertex a = g.add_vertex(), b = g.add_vertex();
  g.add_edge(a, Letter::x, 1, a);
  g.add_edge(b, Letter::y, 2, b);
  g.identify(a, b);
  CHECK(g.vertex_count() == 1);
  const auto e = g.oriented_edges();
  CHECK(std::count(e.begin(), e.end(), Edge{a, Letter::x, 1, a}) == 1);
  CHECK(std::count(e.begin(), e.end(), Edge{a, Letter::y, 2, a}) == 1);
  g.identify(a, a);
  CHECK(g.vertex_count() == 1);

  testing::Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    WeightedDigraph r = testing::random_graph(rng, 2 + rng() % 8, rng() % 6, 3);
    const Vertex v1 = static_cast<Vertex>(rng() % r.vertex_count());
    Vertex v2 = static_cast<Vertex>(rng() % r.vertex_count());
    if (v1 == v2) continue;
    std::multiset<std::tuple<Vertex, int, Weight, Vertex>> expected;
    for (const auto& e : r.oriented_edges()) {
      expected.emplace(e.origin == v2 ? v1 : e.origin, code(e.label), e.weight, e.terminus == v2 ? v1 : e.terminus);
    }
    r.identify(v1, v2);
    std::multiset<std::tuple<Vertex, int, Weight, Vertex>> got;
    for (const auto& e : r.oriented_edges()) got.emplace(e.origin, code(e.label), e.weight, e.terminus);
    CHECK(got == expected);
  }
}

TEST_CASE("path: merging the ends of a path gives a circuit") {
  WeightedDigraph g;
  Vertex prev = g.add_vertex();
  const Vertex first = prev;
  for (Letter l : {Letter::x, Letter::y, Letter::x}) {
    const Vertex next = g.add_vertex();
    g.add_edge(prev, l, l == Letter::y ? 1 : 0, next);
    prev = next;
  }
  g.identify(first, prev);
  const WeightedDigraph f = fold(g);
  CHECK(circuit_weight(f, f.root(), word("xyx")) == 1);
}

TEST_CASE("fold cases") {
  WeightedDigraph g;
  const Vertex a = g.add_vertex(), b = g.add_vertex();
  g.add_edge(a, Letter::x, 3, b);
  g.add_edge(a, Letter::x, 5, b);
  const WeightedDigraph f = fold(g);
  CHECK(f.edge_count() == 1);
  CHECK(f.modulus() == 2);
  CHECK(naive_fold(g).modulus() == 2);

  WeightedDigraph h;
  const Vertex c = h.add_vertex(), d = h.add_vertex();
  h.add_edge(c, Letter::y, 4, d);
  h.add_edge(c, Letter::y, 4, d);
  CHECK(fold(h).edge_count() == 1);
  CHECK(fold(h).modulus() == kInfiniteModulus);

  WeightedDigraph loops;
  const Vertex v = loops.add_vertex();
  loops.add_edge(v, Letter::x, 2, v);
  loops.add_edge(v, Letter::x, 7, v);
  CHECK(fold(loops).modulus() == 5);
}

TEST_CASE("fold agrees with naive folding") {
  testing::Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const WeightedDigraph g = testing::random_graph(rng, 1 + rng() % 20, rng() % 20, 4);
    const WeightedDigraph a = fold(g), b = naive_fold(g);
    CHECK(a.is_folded());
    CHECK(b.is_folded());
    CHECK(a.modulus() == b.modulus());
    CHECK(a.vertex_count() == b.vertex_count());
    CHECK(canonical(a) == canonical(b));
    CHECK(testing::strings(harvest(a, {.max_length = 5}).words) ==
          testing::strings(harvest(b, {.max_length = 5}).words));
    // Idempotence.
    CHECK(canonical(fold(a)) == canonical(a));
    CHECK(fold(a).modulus() == a.modulus());
    CHECK(canonical(naive_fold(b)) == canonical(b));
  }
}

TEST_CASE("fold preserves circuit weights") {
  testing::Rng rng(24);
  for (int t = 0; t < 300; ++t) {
    const WeightedDigraph g = testing::random_graph(rng, 1 + rng() % 12, rng() % 10, 3);
    const WeightedDigraph f = fold(g);
    for (int c = 0; c < 20; ++c) {
      const auto [w, weight] = random_root_circuit(rng, g, 1 + rng() % 6);
      const auto end = read_path(f.adjacency(), f.modulus(), f.root(), w);
      REQUIRE(end);
      CHECK(end->end == f.root());
      CHECK(end->weight == reduce_weight(weight, f.modulus()));
    }
  }
}

TEST_CASE("union-find shifts match eager accumulation") {
  testing::Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 60;
    UnionFindWithShifts uf(n);
    std::vector<std::size_t> cls(n);
    std::vector<Weight> eager(n, 0);
    for (std::size_t i = 0; i < n; ++i) cls[i] = i;
    for (int step = 0; step < 80; ++step) {
      const auto a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
      if (step % 3 == 0) {
        (void)uf.find(a);
        continue;
      }
      if (cls[a] == cls[b]) continue;
      const Vertex ra = uf.find(a), rb = uf.find(b);
      const Weight s = static_cast<Weight>(rng() % 21) - 10;
      const std::size_t old = cls[rb];
      const Weight offset = eager[ra] + s - eager[rb];
      uf.unite(ra, rb, s);
      for (std::size_t v = 0; v < n; ++v) {
        if (cls[v] == old) {
          cls[v] = cls[ra];
          eager[v] += offset;
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = v + 1; w < n; ++w) {
        if (cls[v] != cls[w]) continue;
        const auto vv = static_cast<Vertex>(v), ww = static_cast<Vertex>(w);
        CHECK(uf.find(vv) == uf.find(ww));
        CHECK(uf.total_shift(vv) - uf.total_shift(ww) == eager[v] - eager[w]);
      }
    }
  }
}

TEST_CASE("r-completion and symmetrization") {
  const auto sx = symmetrize(word("x"));
  CHECK(testing::strings(sx) == std::set<std::string>{"x", "X"});
  CHECK(symmetrize(word("xy")).size() == 4);
  std::set<std::string> expected;
  const std::string ak = "xyxYXY";
  for (const std::string& s : {ak, testing::inverse_string(ak)}) {
    for (std::size_t k = 0; k < s.size(); ++k) expected.insert(s.substr(k) + s.substr(0, k));
  }
  CHECK(testing::strings(symmetrize(word(ak))) == expected);

  const WeightedDigraph lx = loop_graph(word("x"));
  CHECK(r_complete(lx, sx).modulus() == 1);
  CHECK(canonical(r_complete(lx, {})) == canonical(fold(lx)));

  // The modulus only ever shrinks in divisibility order.
  testing::Rng rng(26);
  for (int t = 0; t < 50; ++t) {
    WeightedDigraph g = fold(loop_graph(testing::random_cyclic(rng, 1, 6)));
    const auto rel = symmetrize(testing::random_cyclic(rng, 1, 5));
    for (int round = 0; round < 2; ++round) {
      const Weight before = g.modulus();
      g = r_complete(g, rel);
      if (before != kInfiniteModulus) CHECK((g.modulus() != kInfiniteModulus && before % g.modulus() == 0));
    }
  }
}

TEST_CASE("inverse closure and dump format") {
  testing::Rng rng(27);
  const WeightedDigraph g = testing::random_graph(rng, 6, 6, 3);
  const auto edges = g.oriented_edges();
  for (const auto& e : edges) {
    CHECK(std::count(edges.begin(), edges.end(), Edge{e.terminus, inverse(e.label), -e.weight, e.origin}) >= 1);
  }
  WeightedDigraph small;
  const Vertex a = small.add_vertex(), b = small.add_vertex();
  small.add_edge(a, Letter::Y, 2, b);
  CHECK(small.dump() == "N=inf root=0\n1 y -2 0\n");
  small.set_modulus(3);
  CHECK(small.dump().rfind("N=3 root=0\n", 0) == 0);
}
