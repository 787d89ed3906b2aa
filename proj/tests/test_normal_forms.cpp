#include <doctest.h>

#include <deque>
#include <map>

#include "ac/moves.hpp"
#include "ac/normal_forms.hpp"
#include "support.hpp"

using namespace ac;
using testing::word;

namespace {

// String-level substitution followed by cyclic reduction.
std::string substitute(const std::string& w, const std::string& ix, const std::string& iy) {
  std::string out;
  for (char c : w) {
    switch (c) {
      case 'x': out += ix; break;
      case 'X': out += testing::inverse_string(ix); break;
      case 'y': out += iy; break;
      default: out += testing::inverse_string(iy); break;
    }
  }
  return testing::peel(testing::stack_reduce(out));
}

using StrPair = std::pair<std::string, std::string>;

StrPair cyclic_key(const std::string& a, const std::string& b) {
  std::string p = testing::least_rotation_string(a), q = testing::least_rotation_string(b);
  if (testing::shortlex_less(q, p)) std::swap(p, q);
  return {p, q};
}

// Closure under all 20 Whitehead moves without exceeding the starting
// total length; returns the shortlex least pair of minimal total.
StrPair brute_force_nf(const std::string& a, const std::string& b) {
  const std::size_t cap = a.size() + b.size();
  std::vector<std::pair<std::string, std::string>> table;
  for (const auto& m : whitehead_moves()) table.emplace_back(m.map.image_x.str(), m.map.image_y.str());
  std::set<StrPair> seen{cyclic_key(a, b)};
  std::deque<StrPair> queue{*seen.begin()};
  while (!queue.empty()) {
    const StrPair q = queue.front();
    queue.pop_front();
    for (const auto& [ix, iy] : table) {
      const std::string s = substitute(q.first, ix, iy), t = substitute(q.second, ix, iy);
      if (s.empty() || t.empty() || s.size() + t.size() > cap) continue;
      const StrPair k = cyclic_key(s, t);
      if (seen.insert(k).second) queue.push_back(k);
    }
  }
  StrPair best = *seen.begin();
  for (const auto& p : seen) {
    const std::size_t lp = p.first.size() + p.second.size(), lb = best.first.size() + best.second.size();
    if (lp < lb || (lp == lb && (testing::shortlex_less(p.first, best.first) ||
                                 (p.first == best.first && testing::shortlex_less(p.second, best.second))))) {
      best = p;
    }
  }
  return best;
}

Pair random_pair(testing::Rng& rng, std::size_t max_total) {
  const std::size_t a = 1 + rng() % (max_total - 1);
  const std::size_t b = 1 + rng() % (max_total - a);
  return {testing::random_cyclic(rng, a, a), testing::random_cyclic(rng, b, b)};
}

}  // namespace

TEST_CASE("Whitehead table") {
  const auto moves = whitehead_moves();
  CHECK(moves.size() == 20);
  std::size_t non_preserving = 0;
  std::set<std::string> distinct;
  for (const auto& m : moves) {
    non_preserving += !m.length_preserving;
    distinct.insert(m.map.str());
    CHECK(is_automorphism(m.map));
  }
  CHECK(non_preserving == 12);
  CHECK(kNonLengthPreservingMoves == 12);
  CHECK(distinct.size() == 20);
  std::string golden;
  for (const auto& m : moves) golden += m.map.str() + (m.length_preserving ? " =" : " *") + "\n";
  CHECK(golden ==
        "yx y *\nYx y *\nxy y *\nxY y *\nyxY y *\nYxy y *\nx yx *\nx yX *\nx xy *\nx Xy *\nx Xyx *\nx xyX *\n"
        "x y =\nx Y =\nX y =\nX Y =\ny x =\ny X =\nY x =\nY X =\n");
  testing::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const Word w = testing::random_cyclic(rng, 1, 12);
    for (const auto& m : moves) {
      const Word image = apply_whitehead(w, m);
      CHECK(image.str() == substitute(w.str(), m.map.image_x.str(), m.map.image_y.str()));
      if (m.length_preserving) CHECK(image.size() == w.size());
    }
  }
}

TEST_CASE("apply_whitehead examples") {
  const auto moves = whitehead_moves();
  CHECK(apply_whitehead(word("xy"), moves[3]).str() == "x");  // x -> xY
  CHECK(least_cyclic_representative(apply_whitehead(word("xy"), moves[16])).str() == "xy");  // swap
}

TEST_CASE("cyclic_nf") {
  CHECK(cyclic_nf({word("y"), word("x")}).str() == "x y");
  CHECK(cyclic_nf({word("X"), word("y")}).str() == "x y");
  const Pair ak{word("xyxYXY"), word("xxxYYYY")};
  const Pair moved{word("YxY").inverse() * word("xyxYXY") * word("YxY"), word("xy").inverse() * word("YYYYxxx") * word("xy")};
  CHECK(cyclic_nf(moved) == cyclic_nf(ak));
  CHECK_THROWS_AS(cyclic_nf({word("xX"), word("y")}), DegeneratePresentation);
  CHECK_THROWS_AS(cyclic_nf({word("x"), word("Yy")}), DegeneratePresentation);
  CHECK(cyclic_nf({word("Yxy"), word("yX")}).str() == "x xY");
}

TEST_CASE("minimize_total_length") {
  CHECK(minimize_total_length({word("xy"), word("y")}).pair.total_length() == 2);
  const auto xy = minimize_total_length({word("x"), word("y")});
  CHECK(xy.applied.empty());
  const Pair ak{word("xyxYXY"), word("xxxYYYY")};
  CHECK(minimize_total_length(ak).pair.total_length() == 13);
  for (const auto& m : whitehead_moves()) {
    CHECK(apply_whitehead(ak.first, m).size() + apply_whitehead(ak.second, m).size() >= 13);
  }
  testing::Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const Pair p = random_pair(rng, 16);
    const auto r = minimize_total_length(p);
    Pair cur{cyclic_reduce(p.first).core, cyclic_reduce(p.second).core};
    for (auto idx : r.applied) {
      const auto& m = whitehead_moves()[idx];
      const Pair next{apply_whitehead(cur.first, m), apply_whitehead(cur.second, m)};
      CHECK(next.total_length() < cur.total_length());
      cur = next;
    }
    CHECK(cur == r.pair);
  }
}

TEST_CASE("min_level_orbit") {
  const auto xy = min_level_orbit({word("x"), word("y")});
  CHECK(xy.size() == 1);
  CHECK(xy.front().str() == "x y");
  const auto ak = min_level_orbit({word("xyxYXY"), word("xxxYYYY")});
  CHECK(ak.size() <= 112);
  CHECK(std::is_sorted(ak.begin(), ak.end()));
  CHECK_THROWS_AS(min_level_orbit({word("xyxYXY"), word("xxxYYYY")}, 1), OrbitTooLarge);
}

TEST_CASE("full_nf examples and invariance") {
  CHECK(full_nf({word("y"), word("x")}).str() == "x y");
  const Pair ak{word("xyxYXY"), word("xxxYYYY")};
  const Pair nf = full_nf(ak);
  CHECK(full_nf(nf) == nf);
  CHECK(full_nf(apply_aut(ak, {word("y"), word("x")})) == nf);
  CHECK(full_nf(apply_aut(ak, {word("x"), word("yx")})) == nf);
  CHECK(full_nf({ak.second, ak.first.inverse()}) == nf);

  testing::Rng rng(43);
  for (int t = 0; t < 500; ++t) {
    const Pair p = random_pair(rng, 12);
    const Pair f = full_nf(p);
    CHECK(full_nf(f) == f);
    CHECK(full_nf({p.second, p.first}) == f);
    CHECK(full_nf({p.first.inverse(), p.second}) == f);
    const Word c = testing::random_word(rng, 4);
    CHECK(full_nf({c.inverse() * p.first * c, p.second}) == f);
    Substitution phi = whitehead_moves()[rng() % 20].map;
    for (int k = 0; k < 2; ++k) phi = whitehead_moves()[rng() % 20].map.after(phi);
    CHECK(full_nf(phi.apply(p)) == f);
  }
}

TEST_CASE("full_nf equals brute-force orbit minimum for short pairs") {
  testing::Rng rng(44);
  for (int t = 0; t < 400; ++t) {
    const Pair p = random_pair(rng, 8);
    const auto expected = brute_force_nf(p.first.str(), p.second.str());
    const Pair got = full_nf(p);
    CHECK(got.first.str() == expected.first);
    CHECK(got.second.str() == expected.second);
  }
}
