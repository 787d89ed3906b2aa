#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace ac {

// Letters of the rank-2 alphabet. The numeric codes double as the shortlex
// order x < X < y < Y, and inverse pairs differ only in the low bit.
enum class Letter : std::uint8_t { x = 0, X = 1, y = 2, Y = 3 };

constexpr Letter inverse(Letter l) noexcept {
  return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1u);
}
constexpr std::uint8_t code(Letter l) noexcept { return static_cast<std::uint8_t>(l); }
constexpr bool is_inverse(Letter a, Letter b) noexcept { return (code(a) ^ code(b)) == 1u; }
constexpr int generator_index(Letter l) noexcept { return code(l) >> 1; }
constexpr int exponent_sign(Letter l) noexcept { return (code(l) & 1u) ? -1 : 1; }

char to_char(Letter l) noexcept;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Freely reduced word over {x, X, y, Y}, packed 32 letters per 64-bit cell.
// Letter i lives in cell i / 32 at bit offset 62 - 2 * (i % 32), so that an
// unsigned comparison of cells agrees with lexicographic letter order.
class Word {
 public:
  static constexpr std::size_t kLettersPerCell = 32;
  using Cells = boost::container::small_vector<std::uint64_t, 2>;

  Word() = default;

  // Free reduction of an arbitrary letter sequence.
  static Word from_letters(std::span<const Letter> letters);
  static Word from_letters(std::initializer_list<Letter> letters) {
    return from_letters(std::span<const Letter>(letters.begin(), letters.size()));
  }
  // Parses "xyXY..."; "1" and "" denote the empty word. Input is freely reduced.
  static Word parse(std::string_view text);
  // Rebuilds a word from its packed image. Throws if the cells encode a
  // non-reduced word or carry bits past `length`.
  static Word from_cells(std::span<const std::uint64_t> cells, std::size_t length);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  Letter operator[](std::size_t i) const noexcept {
    return static_cast<Letter>((cells_[i >> 5] >> shift_of(i)) & 3u);
  }
  Letter front() const noexcept { return (*this)[0]; }
  Letter back() const noexcept { return (*this)[size_ - 1]; }

  std::vector<Letter> letters() const;
  const Cells& cells() const noexcept { return cells_; }

  // Appends `l`, cancelling against the last letter when they are inverse.
  void append(Letter l);
  void append(const Word& w);
  void pop_back() noexcept;

  Word inverse() const;
  Word power(long long n) const;
  Word subword(std::size_t pos, std::size_t len) const;

  // Rotation u[k..] u[..k]. Only meaningful for cyclically reduced words.
  Word rotate_left(std::size_t k) const;
  // Letter-by-letter rotation; kept as the reference for the packed path.
  Word rotate_left_portable(std::size_t k) const;

  bool is_cyclically_reduced() const noexcept {
    return size_ < 2 || !is_inverse(front(), back());
  }

  std::string str() const;  // "1" for the empty word

  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.size_ == b.size_ && a.cells_ == b.cells_;
  }
  // Shortlex: shorter first, then lexicographic with x < X < y < Y.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  static constexpr unsigned shift_of(std::size_t i) noexcept {
    return 62u - 2u * static_cast<unsigned>(i & 31u);
  }
  void push_raw(Letter l);

  Cells cells_;
  std::uint32_t size_ = 0;
};

Word operator*(const Word& a, const Word& b);

inline std::strong_ordering shortlex_compare(const Word& a, const Word& b) noexcept {
  return a <=> b;
}

Word free_reduce(std::span<const Letter> letters);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator^-1 * core * conjugator
};
CyclicReduction cyclic_reduce(const Word& w);

// Shortlex-least word among all rotations of w and of w^-1.
Word least_cyclic_representative(const Word& w);

// True iff the cyclic reductions of a and b are rotations of each other.
bool free_conjugate(const Word& a, const Word& b);

// Exponent sums (x, y).
std::array<long long, 2> exponent_sums(const Word& w);

struct Pair {
  Word first;
  Word second;

  std::size_t total_length() const noexcept { return first.size() + second.size(); }
  const Word& operator[](int i) const { return i == 0 ? first : second; }
  Word& operator[](int i) { return i == 0 ? first : second; }

  std::string str() const { return first.str() + " " + second.str(); }
  static Pair parse(std::string_view text);

  friend bool operator==(const Pair&, const Pair&) = default;
  friend std::strong_ordering operator<=>(const Pair& a, const Pair& b) noexcept {
    if (auto c = a.first <=> b.first; c != 0) return c;
    return a.second <=> b.second;
  }
};

// Orders by total length, then shortlex on (first, second).
struct PairPriorityLess {
  bool operator()(const Pair& a, const Pair& b) const noexcept {
    if (a.total_length() != b.total_length()) return a.total_length() < b.total_length();
    return a < b;
  }
};

struct ExponentMatrix {
  std::array<std::array<long long, 2>, 2> entries{};

  long long operator()(int i, int j) const { return entries[i][j]; }
  long long det() const { return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]; }
  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;
};

ExponentMatrix exponent_matrix(const Pair& p);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};
struct PairHash {
  std::size_t operator()(const Pair& p) const noexcept {
    return p.first.hash() * 0x9E3779B97F4A7C15ull ^ p.second.hash();
  }
};

// Packed byte image used as a compact visited-set key:
// [len0:u16][len1:u16][cells of first][cells of second], little-endian.
std::string pack_pair(const Pair& p);
Pair unpack_pair(std::string_view bytes);

}  // namespace ac

template <>
struct std::hash<ac::Word> {
  std::size_t operator()(const ac::Word& w) const noexcept { return w.hash(); }
};
