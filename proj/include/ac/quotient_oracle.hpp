#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ac/word.hpp"

namespace ac {

enum class Verdict { CONSISTENT, REFUTED };

struct OracleOptions {
  unsigned max_degree = 5;  // 2..7
  // 0: every homomorphism F2 -> S_k up to simultaneous conjugation.
  // Otherwise this many random (a, b) per degree.
  std::size_t trials = 0;
  std::uint64_t seed = 1;
};

// Homomorphisms phi: F2 -> S_k with phi(v) = 1, k <= max_degree. A word u'
// is refuted as a conjugate of u in <x, y | v> when some phi sends u and u'
// to permutations of different cycle type.
class QuotientOracle {
 public:
  using Perm = std::array<std::uint8_t, 7>;

  QuotientOracle(const Word& u, const Word& v, const OracleOptions& options = {});

  Verdict check(const Word& u_prime) const;
  std::size_t homomorphisms() const noexcept { return images_.size(); }

 private:
  struct Image {
    unsigned degree;
    std::array<Perm, 4> letters;  // images of x, X, y, Y
    std::array<std::uint8_t, 8> cycle_type;  // of phi(u)
  };
  std::vector<Image> images_;
};

Verdict finite_quotient_oracle(const Word& u, const Word& u_prime, const Word& v, const OracleOptions& options = {});

}  // namespace ac
