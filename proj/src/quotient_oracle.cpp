#include "ac/quotient_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ac {

namespace {

using Perm = QuotientOracle::Perm;

Perm identity(unsigned k) {
  Perm p{};
  std::iota(p.begin(), p.begin() + k, std::uint8_t{0});
  return p;
}

Perm invert(const Perm& p, unsigned k) {
  Perm q{};
  for (unsigned i = 0; i < k; ++i) q[p[i]] = static_cast<std::uint8_t>(i);
  return q;
}

// Right action: apply the letters of w left to right.
Perm evaluate(const Word& w, const std::array<Perm, 4>& letters, unsigned k) {
  Perm p = identity(k);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Perm& g = letters[code(w[i])];
    for (unsigned j = 0; j < k; ++j) p[j] = g[p[j]];
  }
  return p;
}

std::array<std::uint8_t, 8> cycle_type(const Perm& p, unsigned k) {
  std::array<std::uint8_t, 8> type{};
  std::array<bool, 7> seen{};
  std::size_t n = 0;
  for (unsigned i = 0; i < k; ++i) {
    if (seen[i]) continue;
    std::uint8_t len = 0;
    for (unsigned j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    type[n++] = len;
  }
  std::sort(type.begin(), type.begin() + n, std::greater<>());
  return type;
}

// One permutation per cycle type (partition of k).
std::vector<Perm> class_representatives(unsigned k) {
  std::vector<Perm> out;
  std::vector<unsigned> parts;
  auto emit = [&] {
    Perm p = identity(k);
    unsigned start = 0;
    for (unsigned len : parts) {
      for (unsigned i = 0; i < len; ++i) p[start + i] = static_cast<std::uint8_t>(start + (i + 1) % len);
      start += len;
    }
    out.push_back(p);
  };
  auto rec = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
      parts.push_back(part);
      self(self, remaining - part, part);
      parts.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

}  // namespace

QuotientOracle::QuotientOracle(const Word& u, const Word& v, const OracleOptions& options) {
  if (options.max_degree < 2 || options.max_degree > 7) throw std::invalid_argument("oracle degree must be in 2..7");
  std::mt19937_64 rng(options.seed);
  for (unsigned k = 2; k <= options.max_degree; ++k) {
    auto consider = [&](const Perm& a, const Perm& b) {
      const std::array<Perm, 4> letters = {a, invert(a, k), b, invert(b, k)};
      if (evaluate(v, letters, k) != identity(k)) return;
      images_.push_back({k, letters, cycle_type(evaluate(u, letters, k), k)});
    };
    if (options.trials == 0) {
      for (const Perm& a : class_representatives(k)) {
        Perm b = identity(k);
        do {
          consider(a, b);
        } while (std::next_permutation(b.begin(), b.begin() + k));
      }
    } else {
      for (std::size_t t = 0; t < options.trials; ++t) {
        Perm a = identity(k), b = identity(k);
        std::shuffle(a.begin(), a.begin() + k, rng);
        std::shuffle(b.begin(), b.begin() + k, rng);
        consider(a, b);
      }
    }
  }
}

Verdict QuotientOracle::check(const Word& u_prime) const {
  for (const Image& im : images_) {
    if (cycle_type(evaluate(u_prime, im.letters, im.degree), im.degree) != im.cycle_type) return Verdict::REFUTED;
  }
  return Verdict::CONSISTENT;
}

Verdict finite_quotient_oracle(const Word& u, const Word& u_prime, const Word& v, const OracleOptions& options) {
  return QuotientOracle(u, v, options).check(u_prime);
}

}  // namespace ac
