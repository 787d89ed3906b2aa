#include "ac/classify.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <tuple>

namespace ac {

namespace {

auto witness_key(const BsWitness& w) {
  return std::make_tuple(w.u.size(), w.v.size(), w.n < 0, std::llabs(w.n), std::llabs(w.m), w.m < 0, w.u, w.v);
}

bool witness_less(const BsWitness& a, const BsWitness& b) { return witness_key(a) < witness_key(b); }

// Exponent e with w = base^e, if any (base nonempty).
std::optional<long long> power_of(const Word& w, const Word& base) {
  if (w.size() % base.size() != 0) return std::nullopt;
  const long long e = static_cast<long long>(w.size() / base.size());
  if (base.power(e) == w) return e;
  if (base.power(-e) == w) return -e;
  return std::nullopt;
}

}  // namespace

std::string to_string(RelatorTag tag) {
  switch (tag) {
    case RelatorTag::BS_TYPE: return "BS_TYPE";
    case RelatorTag::BAUMSLAG_TYPE: return "BAUMSLAG_TYPE";
    case RelatorTag::UNCLASSIFIED: return "UNCLASSIFIED";
  }
  return {};
}

std::string BsWitness::str() const {
  return "u=" + u.str() + " v=" + v.str() + " n=" + std::to_string(n) + " m=" + std::to_string(m);
}

std::vector<BsWitness> bs_witnesses(const Word& r, std::size_t max_piece) {
  const Word core = cyclic_reduce(r).core;
  const std::size_t len = core.size();
  std::set<BsWitness, decltype(&witness_less)> found(&witness_less);
  if (len < 2) return {};
  std::set<Word> rotations;
  for (std::size_t k = 0; k < len; ++k) rotations.insert(core.rotate_left(k));
  for (const Word& rho : rotations) {
    for (std::size_t lv = 0; 2 * lv + 2 <= len; ++lv) {
      if (max_piece != 0 && lv > max_piece) break;
      const Word v = rho.subword(0, lv).inverse();
      const std::size_t rest = len - 2 * lv;
      for (std::size_t a = 1; a < rest; ++a) {
        if (rho.subword(lv + a, lv) != v) continue;
        const Word A = rho.subword(lv, a);
        const Word B = rho.subword(2 * lv + a, rest - a);
        const std::size_t g = std::gcd(a, rest - a);
        for (std::size_t d = 1; d <= g; ++d) {
          if (g % d != 0 || (max_piece != 0 && d > max_piece)) continue;
          const Word u = A.subword(0, d);
          if (!u.is_cyclically_reduced()) continue;
          const auto n = power_of(A, u);
          const auto minus_m = power_of(B, u);
          if (!n || !minus_m) continue;
          found.insert({u, v, *n, -*minus_m});
          found.insert({u.inverse(), v, -*n, *minus_m});
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

RelatorClass detect_bs_type(const Word& r, std::size_t max_piece) {
  const auto all = bs_witnesses(r, max_piece);
  if (all.empty()) return {};
  return {RelatorTag::BS_TYPE, all.front()};
}

RelatorClass classify_relator(const Word& r, std::size_t max_piece) {
  const auto all = bs_witnesses(r, max_piece);
  if (all.empty()) return {};
  for (const auto& w : all) {
    if (!w.v.empty() && free_conjugate(w.u, w.v)) return {RelatorTag::BAUMSLAG_TYPE, w};
  }
  return {RelatorTag::BS_TYPE, all.front()};
}

}  // namespace ac
