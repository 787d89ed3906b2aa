#pragma once

// Generators and independent oracles shared by the test binaries. The
// oracles work on std::string and never call the library's reduction code.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ac/weighted_digraph.hpp"
#include "ac/word.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline constexpr char kAlphabet[4] = {'x', 'X', 'y', 'Y'};

inline char inverse_char(char c) {
  switch (c) {
    case 'x': return 'X';
    case 'X': return 'x';
    case 'y': return 'Y';
    default: return 'y';
  }
}

inline std::string stack_reduce(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!out.empty() && out.back() == inverse_char(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string inverse_string(const std::string& s) {
  std::string out(s.rbegin(), s.rend());
  for (char& c : out) c = inverse_char(c);
  return out;
}

// Peels matching first/last letters one layer at a time.
inline std::string peel(std::string s) {
  while (s.size() >= 2 && s.front() == inverse_char(s.back())) s = s.substr(1, s.size() - 2);
  return s;
}

inline int rank_char(char c) { return static_cast<int>(std::string("xXyY").find(c)); }

inline bool shortlex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return rank_char(a[i]) < rank_char(b[i]);
  }
  return false;
}

inline std::string least_rotation_string(const std::string& s) {
  std::string best = s;
  for (const std::string& t : {s, inverse_string(s)}) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::string r = t.substr(k) + t.substr(0, k);
      if (shortlex_less(r, best)) best = r;
    }
  }
  return best;
}

inline std::string raw_letters(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(kAlphabet[rng() % 4]);
  return s;
}

// Freely reduced word of exactly n letters.
inline std::string reduced_string(Rng& rng, std::size_t n) {
  std::string s;
  while (s.size() < n) {
    const char c = kAlphabet[rng() % 4];
    if (!s.empty() && s.back() == inverse_char(c)) continue;
    s.push_back(c);
  }
  return s;
}

// Cyclically reduced word of exactly n >= 1 letters.
inline std::string cyclic_string(Rng& rng, std::size_t n) {
  for (;;) {
    std::string s = reduced_string(rng, n);
    if (n < 2 || s.front() != inverse_char(s.back())) return s;
  }
}

inline ac::Word word(const std::string& s) { return ac::Word::parse(s); }

inline ac::Word random_word(Rng& rng, std::size_t max_len) {
  return word(reduced_string(rng, rng() % (max_len + 1)));
}

inline ac::Word random_cyclic(Rng& rng, std::size_t min_len, std::size_t max_len) {
  return word(cyclic_string(rng, min_len + rng() % (max_len - min_len + 1)));
}

inline std::set<std::string> strings(const std::vector<ac::Word>& ws) {
  std::set<std::string> out;
  for (const auto& w : ws) out.insert(w.str());
  return out;
}

// Connected random graph: a random spanning tree plus extra edges.
inline ac::WeightedDigraph random_graph(Rng& rng, std::size_t vertices, std::size_t extra, int max_weight) {
  ac::WeightedDigraph g;
  for (std::size_t i = 0; i < vertices; ++i) g.add_vertex();
  auto weight = [&] { return static_cast<ac::Weight>(rng() % (2 * max_weight + 1)) - max_weight; };
  auto label = [&] { return static_cast<ac::Letter>(rng() % 4); };
  for (std::size_t i = 1; i < vertices; ++i) {
    g.add_edge(static_cast<ac::Vertex>(rng() % i), label(), weight(), static_cast<ac::Vertex>(i));
  }
  for (std::size_t e = 0; e < extra; ++e) {
    g.add_edge(static_cast<ac::Vertex>(rng() % vertices), label(), weight(),
               static_cast<ac::Vertex>(rng() % vertices));
  }
  return g;
}

// All cyclic cores of reduced closed paths of length <= L with weight 1 mod
// N, by depth-first search from every vertex, closed under rotation.
inline std::set<std::string> brute_force_unit_circuits(const ac::WeightedDigraph& folded, std::size_t L) {
  const auto adj = folded.adjacency();
  const ac::Weight n = folded.modulus();
  std::set<std::string> out;
  std::string path;
  auto dfs = [&](auto&& self, ac::Vertex start, ac::Vertex at, ac::Weight w, int last) -> void {
    if (!path.empty() && at == start && ac::reduce_weight(w - 1, n) == 0) {
      const std::string core = peel(path);
      if (!core.empty()) {
        for (std::size_t k = 0; k < core.size(); ++k) out.insert(core.substr(k) + core.substr(0, k));
      }
    }
    if (path.size() == L) return;
    for (int l = 0; l < 4; ++l) {
      if (last >= 0 && (last ^ 1) == l) continue;
      const auto& slot = adj[at][l];
      if (!slot.present()) continue;
      path.push_back(kAlphabet[l]);
      self(self, start, slot.to, ac::reduce_weight(w + slot.weight, n), l);
      path.pop_back();
    }
  };
  for (ac::Vertex v = 0; v < adj.size(); ++v) dfs(dfs, v, v, 0, -1);
  return out;
}

}  // namespace testing
