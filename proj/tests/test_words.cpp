#include <doctest.h>

#include "ac/word.hpp"
#include "support.hpp"

using namespace ac;
using testing::word;

TEST_CASE("parse reduces and reports positions") {
  CHECK(Word::parse("xX").empty());
  CHECK(Word::parse("1").empty());
  CHECK(Word::parse("").empty());
  CHECK(Word::parse("xyxYXY").size() == 6);
  CHECK(Word::parse("xxYXxy").str() == testing::stack_reduce("xxYXxy"));
  try {
    Word::parse("xyz");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(Word::parse("x y"), ParseError);
}

TEST_CASE("free reduction matches a stack reducer") {
  testing::Rng rng(11);
  CHECK(Word::from_letters({Letter::x, Letter::X, Letter::y}).str() == "y");
  CHECK(Word::from_letters(std::span<const Letter>{}).empty());
  for (int t = 0; t < 2000; ++t) {
    const std::string raw = testing::raw_letters(rng, 64);
    const Word w = Word::parse(raw);
    CHECK(w.str() == (testing::stack_reduce(raw).empty() ? "1" : testing::stack_reduce(raw)));
    // Reducing a random slice first gives the same result.
    const std::size_t a = rng() % 64, b = a + rng() % (65 - a);
    const std::string partial = raw.substr(0, a) + testing::stack_reduce(raw.substr(a, b - a)) + raw.substr(b);
    CHECK(Word::parse(partial) == w);
    CHECK(Word::parse(w.str()) == w);
  }
}

TEST_CASE("packing round trip and rotation fast path") {
  testing::Rng rng(12);
  for (std::size_t n = 0; n <= 128; ++n) {
    const Word w = word(testing::reduced_string(rng, n));
    CHECK(w.size() == n);
    const Word back = Word::from_cells(std::span(w.cells().data(), w.cells().size()), w.size());
    CHECK(back == w);
    CHECK(Word::from_letters(w.letters()) == w);
    if (n > 0) {
      const Word c = word(testing::cyclic_string(rng, n));
      for (std::size_t k = 0; k < n; k += 1 + n / 8) CHECK(c.rotate_left(k) == c.rotate_left_portable(k));
    }
  }
  CHECK_THROWS(Word::from_cells(std::vector<std::uint64_t>{0x4000000000000000ull}, 2));  // "xX"
  const Pair p{word("xyxYXY"), word(std::string(40, 'x'))};
  CHECK(unpack_pair(pack_pair(p)) == p);
}

TEST_CASE("cyclic reduction") {
  const auto r = cyclic_reduce(word("Xyx"));
  CHECK(r.core.str() == "y");
  CHECK(r.conjugator.str() == "x");
  CHECK(cyclic_reduce(word("xyxYXY")).core.str() == "xyxYXY");
  CHECK(cyclic_reduce(word("xyxYXY")).conjugator.empty());
  testing::Rng rng(13);
  for (int t = 0; t < 2000; ++t) {
    const std::string s = testing::reduced_string(rng, rng() % 20);
    const auto c = cyclic_reduce(word(s));
    CHECK(c.core.str() == (testing::peel(s).empty() ? "1" : testing::peel(s)));
    CHECK(c.conjugator.inverse() * c.core * c.conjugator == word(s));
    CHECK(c.core.is_cyclically_reduced());
  }
  const auto layered = cyclic_reduce(word("YXyxy"));
  CHECK(layered.conjugator.inverse() * layered.core * layered.conjugator == word("YXyxy"));
}

TEST_CASE("least cyclic representative") {
  CHECK(least_cyclic_representative(word("yx")).str() == "xy");
  CHECK(least_cyclic_representative(word("x")).str() == "x");
  CHECK(least_cyclic_representative(word("xyxYXY")).str() == testing::least_rotation_string("xyxYXY"));
  testing::Rng rng(14);
  for (int t = 0; t < 1000; ++t) {
    const std::string s = testing::cyclic_string(rng, 1 + rng() % 40);
    const Word least = least_cyclic_representative(word(s));
    CHECK(least.str() == testing::least_rotation_string(s));
    const std::size_t k = rng() % s.size();
    CHECK(least_cyclic_representative(word(s.substr(k) + s.substr(0, k))) == least);
    CHECK(least_cyclic_representative(word(s).inverse()) == least);
  }
}

TEST_CASE("exponent matrix") {
  CHECK(exponent_matrix({word("x"), word("y")}).det() == 1);
  const auto m = exponent_matrix({word("xyxYXY"), word("xxxYYYY")});
  CHECK(m(0, 0) == 1);
  CHECK(m(0, 1) == -1);
  CHECK(m(1, 0) == 3);
  CHECK(m(1, 1) == -4);
  CHECK(m.det() == -1);
  CHECK(exponent_matrix({word("xy"), word("xy")}).det() == 0);
}

TEST_CASE("shortlex order") {
  CHECK(shortlex_compare(word("x"), word("xy")) < 0);
  CHECK(shortlex_compare(word("x"), word("X")) < 0);
  CHECK(shortlex_compare(word("xy"), word("xY")) < 0);
  testing::Rng rng(15);
  for (int t = 0; t < 2000; ++t) {
    const std::string a = testing::reduced_string(rng, rng() % 70), b = testing::reduced_string(rng, rng() % 70);
    CHECK((word(a) < word(b)) == testing::shortlex_less(a, b));
  }
}

TEST_CASE("pair text format") {
  const Pair p = Pair::parse("xyxYXY xxxYYYY");
  CHECK(p.total_length() == 13);
  CHECK(p.str() == "xyxYXY xxxYYYY");
  CHECK(Pair::parse("1 y").str() == "1 y");
  CHECK_THROWS_AS(Pair::parse("xy"), ParseError);
  CHECK_THROWS_AS(Pair::parse("x y x"), ParseError);
}
