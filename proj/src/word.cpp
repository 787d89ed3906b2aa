#include "ac/word.hpp"

#include <algorithm>
#include <cstring>

namespace ac {

char to_char(Letter l) noexcept {
  static constexpr char kChars[4] = {'x', 'X', 'y', 'Y'};
  return kChars[code(l)];
}

void Word::push_raw(Letter l) {
  if ((size_ & 31u) == 0) cells_.push_back(0);
  cells_.back() |= static_cast<std::uint64_t>(code(l)) << shift_of(size_);
  ++size_;
}

void Word::pop_back() noexcept {
  --size_;
  cells_.back() &= ~(std::uint64_t{3} << shift_of(size_));
  if ((size_ & 31u) == 0) cells_.pop_back();
}

void Word::append(Letter l) {
  if (size_ > 0 && is_inverse(back(), l)) {
    pop_back();
  } else {
    push_raw(l);
  }
}

void Word::append(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) append(w[i]);
}

Word Word::from_letters(std::span<const Letter> letters) {
  Word w;
  for (Letter l : letters) w.append(l);
  return w;
}

Word Word::parse(std::string_view text) {
  if (text == "1") return {};
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    Letter l;
    switch (text[i]) {
      case 'x': l = Letter::x; break;
      case 'X': l = Letter::X; break;
      case 'y': l = Letter::y; break;
      case 'Y': l = Letter::Y; break;
      default:
        throw ParseError("invalid character '" + std::string(1, text[i]) + "' at position " +
                             std::to_string(i),
                         i);
    }
    w.append(l);
  }
  return w;
}

Word Word::from_cells(std::span<const std::uint64_t> cells, std::size_t length) {
  if (cells.size() != (length + 31) / 32) throw std::invalid_argument("cell count does not match length");
  if (length % 32 != 0 && !cells.empty()) {
    const std::uint64_t tail_mask = (std::uint64_t{1} << (64 - 2 * (length % 32))) - 1;
    if (cells.back() & tail_mask) throw std::invalid_argument("stray bits after last letter");
  }
  Word w;
  w.cells_.assign(cells.begin(), cells.end());
  w.size_ = static_cast<std::uint32_t>(length);
  for (std::size_t i = 1; i < length; ++i) {
    if (is_inverse(w[i - 1], w[i])) throw std::invalid_argument("packed word is not freely reduced");
  }
  return w;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

Word Word::inverse() const {
  Word w;
  w.cells_.reserve(cells_.size());
  for (std::size_t i = size_; i-- > 0;) w.push_raw(ac::inverse((*this)[i]));
  return w;
}

Word Word::power(long long n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word w;
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) w.append(base);
  return w;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  Word w;
  for (std::size_t i = pos; i < pos + len; ++i) w.push_raw((*this)[i]);
  return w;
}

Word Word::rotate_left_portable(std::size_t k) const {
  if (size_ == 0) return *this;
  k %= size_;
  Word w;
  w.cells_.reserve(cells_.size());
  for (std::size_t i = 0; i < size_; ++i) w.push_raw((*this)[(i + k) % size_]);
  return w;
}

Word Word::rotate_left(std::size_t k) const {
  if (size_ == 0) return *this;
  k %= size_;
  if (k == 0) return *this;
  if (size_ > kLettersPerCell) return rotate_left_portable(k);
  const unsigned bits = 2u * size_;
  const unsigned s = 2u * static_cast<unsigned>(k);
  const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : ~(~std::uint64_t{0} >> bits);
  const std::uint64_t c = cells_[0];
  Word w;
  w.size_ = size_;
  w.cells_.push_back(((c << s) | (c >> (bits - s))) & mask);
  return w;
}

std::string Word::str() const {
  if (size_ == 0) return "1";
  std::string s(size_, '?');
  for (std::size_t i = 0; i < size_; ++i) s[i] = to_char((*this)[i]);
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  for (std::size_t i = 0; i < a.cells_.size(); ++i) {
    if (a.cells_[i] != b.cells_[i]) return a.cells_[i] <=> b.cells_[i];
  }
  return std::strong_ordering::equal;
}

std::size_t Word::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ size_;
  for (std::uint64_t c : cells_) {
    h ^= c + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  w.append(b);
  return w;
}

Word free_reduce(std::span<const Letter> letters) { return Word::from_letters(letters); }

CyclicReduction cyclic_reduce(const Word& w) {
  std::size_t peel = 0;
  const std::size_t n = w.size();
  while (2 * peel + 1 < n && is_inverse(w[peel], w[n - 1 - peel])) ++peel;
  // w = c^-1 core c with c^-1 = w[0..peel).
  return {w.subword(peel, n - 2 * peel), w.subword(0, peel).inverse()};
}

Word least_cyclic_representative(const Word& w) {
  if (w.size() < 2) {
    if (w.empty()) return w;
    // A single letter and its inverse: the even code is smaller.
    return Word::from_letters({static_cast<Letter>(code(w[0]) & ~1u)});
  }
  Word best = w;
  const Word inv = w.inverse();
  for (std::size_t k = 0; k < w.size(); ++k) {
    Word a = w.rotate_left(k);
    if (a < best) best = std::move(a);
    Word b = inv.rotate_left(k);
    if (b < best) best = std::move(b);
  }
  return best;
}

bool free_conjugate(const Word& a, const Word& b) {
  const Word ca = cyclic_reduce(a).core;
  const Word cb = cyclic_reduce(b).core;
  if (ca.size() != cb.size()) return false;
  if (ca.empty()) return true;
  for (std::size_t k = 0; k < ca.size(); ++k) {
    if (ca.rotate_left(k) == cb) return true;
  }
  return false;
}

std::array<long long, 2> exponent_sums(const Word& w) {
  std::array<long long, 2> s{0, 0};
  for (std::size_t i = 0; i < w.size(); ++i) s[generator_index(w[i])] += exponent_sign(w[i]);
  return s;
}

ExponentMatrix exponent_matrix(const Pair& p) {
  ExponentMatrix m;
  m.entries[0] = exponent_sums(p.first);
  m.entries[1] = exponent_sums(p.second);
  return m;
}

Pair Pair::parse(std::string_view text) {
  const auto first_space = text.find(' ');
  if (first_space == std::string_view::npos) {
    throw ParseError("pair needs two words separated by a space", text.size());
  }
  const auto rest = text.substr(first_space + 1);
  if (rest.find(' ') != std::string_view::npos) {
    throw ParseError("pair has more than two words", first_space + 1 + rest.find(' '));
  }
  Pair p;
  p.first = Word::parse(text.substr(0, first_space));
  try {
    p.second = Word::parse(rest);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), e.position() + first_space + 1);
  }
  return p;
}

namespace {

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(std::string_view in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

}  // namespace

std::string pack_pair(const Pair& p) {
  std::string out;
  out.reserve(4 + 8 * (p.first.cells().size() + p.second.cells().size()));
  put_u16(out, static_cast<std::uint16_t>(p.first.size()));
  put_u16(out, static_cast<std::uint16_t>(p.second.size()));
  for (std::uint64_t c : p.first.cells()) put_u64(out, c);
  for (std::uint64_t c : p.second.cells()) put_u64(out, c);
  return out;
}

Pair unpack_pair(std::string_view bytes) {
  if (bytes.size() < 4) throw std::invalid_argument("packed pair too short");
  const auto u16 = [&](std::size_t at) {
    return std::size_t(static_cast<unsigned char>(bytes[at])) |
           (std::size_t(static_cast<unsigned char>(bytes[at + 1])) << 8);
  };
  const std::size_t n0 = u16(0), n1 = u16(2);
  const std::size_t c0 = (n0 + 31) / 32, c1 = (n1 + 31) / 32;
  if (bytes.size() != 4 + 8 * (c0 + c1)) throw std::invalid_argument("packed pair has wrong size");
  std::vector<std::uint64_t> cells(c0 + c1);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = get_u64(bytes, 4 + 8 * i);
  return {Word::from_cells(std::span(cells).first(c0), n0),
          Word::from_cells(std::span(cells).subspan(c0), n1)};
}

}  // namespace ac
