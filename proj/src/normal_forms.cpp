#include "ac/normal_forms.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

namespace ac {

Word Substitution::apply(const Word& w) const {
  const Word inv_x = image_x.inverse();
  const Word inv_y = image_y.inverse();
  const std::array<const Word*, 4> images = {&image_x, &inv_x, &image_y, &inv_y};
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) out.append(*images[code(w[i])]);
  return out;
}

std::span<const WhiteheadMove> whitehead_moves() {
  static const std::vector<WhiteheadMove> table = [] {
    const char* const multipliers[12][2] = {
        {"yx", "y"}, {"Yx", "y"}, {"xy", "y"}, {"xY", "y"}, {"yxY", "y"}, {"Yxy", "y"},
        {"x", "yx"}, {"x", "yX"}, {"x", "xy"}, {"x", "Xy"}, {"x", "Xyx"}, {"x", "xyX"},
    };
    const char* const permutations[8][2] = {
        {"x", "y"}, {"x", "Y"}, {"X", "y"}, {"X", "Y"}, {"y", "x"}, {"y", "X"}, {"Y", "x"}, {"Y", "X"},
    };
    std::vector<WhiteheadMove> t;
    for (const auto& m : multipliers) t.push_back({{Word::parse(m[0]), Word::parse(m[1])}, false});
    for (const auto& m : permutations) t.push_back({{Word::parse(m[0]), Word::parse(m[1])}, true});
    return t;
  }();
  return table;
}

Word apply_whitehead(const Word& w, const WhiteheadMove& m) { return cyclic_reduce(m.map.apply(w)).core; }

namespace {

Word cyclic_class(const Word& w) {
  const Word core = cyclic_reduce(w).core;
  if (core.empty()) throw DegeneratePresentation("component is trivial after cyclic reduction");
  return least_cyclic_representative(core);
}

Pair apply_cyclic(const Pair& p, const WhiteheadMove& m) {
  return {apply_whitehead(p.first, m), apply_whitehead(p.second, m)};
}

}  // namespace

Pair cyclic_nf(const Pair& p) {
  Word a = cyclic_class(p.first);
  Word b = cyclic_class(p.second);
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

Minimization minimize_total_length(const Pair& p) {
  Minimization result{{cyclic_reduce(p.first).core, cyclic_reduce(p.second).core}, {}};
  const auto moves = whitehead_moves();
  for (;;) {
    std::size_t best_total = result.pair.total_length();
    std::size_t best_index = moves.size();
    Pair best;
    for (std::size_t i = 0; i < kNonLengthPreservingMoves; ++i) {
      Pair image = apply_cyclic(result.pair, moves[i]);
      if (image.total_length() < best_total) {
        best_total = image.total_length();
        best_index = i;
        best = std::move(image);
      }
    }
    if (best_index == moves.size()) break;
    result.pair = std::move(best);
    result.applied.push_back(best_index);
  }
  return result;
}

std::vector<Pair> min_level_orbit(const Pair& minimal, std::size_t cap) {
  const Pair start = cyclic_nf(minimal);
  const std::size_t level = start.total_length();
  std::set<Pair> seen{start};
  std::deque<Pair> queue{start};
  const auto moves = whitehead_moves();
  while (!queue.empty()) {
    const Pair q = std::move(queue.front());
    queue.pop_front();
    for (const auto& m : moves) {
      const Pair image = apply_cyclic(q, m);
      if (image.total_length() != level) continue;
      Pair nf = cyclic_nf(image);
      if (seen.insert(nf).second) {
        if (seen.size() > cap) {
          throw OrbitTooLarge("min_level_orbit: more than " + std::to_string(cap) + " pairs at total length " +
                              std::to_string(level));
        }
        queue.push_back(std::move(nf));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

Pair full_nf(const Pair& p, std::size_t cap) {
  const Pair reduced = minimize_total_length(p).pair;
  auto orbit = min_level_orbit(reduced, cap);
  return orbit.front();
}

}  // namespace ac
