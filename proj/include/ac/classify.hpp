#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ac/word.hpp"

namespace ac {

enum class RelatorTag { BS_TYPE, BAUMSLAG_TYPE, UNCLASSIFIED };

std::string to_string(RelatorTag tag);

// A rotation of the relator spells v^-1 u^n v u^-m letter for letter.
struct BsWitness {
  Word u;
  Word v;
  long long n = 0;
  long long m = 0;

  Word relator() const { return v.inverse() * u.power(n) * v * u.power(-m); }
  std::string str() const;
  friend bool operator==(const BsWitness&, const BsWitness&) = default;
};

struct RelatorClass {
  RelatorTag tag = RelatorTag::UNCLASSIFIED;
  std::optional<BsWitness> witness;
};

// Every factorization, ordered by |u|, |v|, then positive and small
// exponents first. Both (u, n, m) and
// (u^-1, -n, -m) are listed. max_piece bounds |u| and |v|; 0 = no bound.
std::vector<BsWitness> bs_witnesses(const Word& r, std::size_t max_piece = 0);

RelatorClass detect_bs_type(const Word& r, std::size_t max_piece = 0);
RelatorClass classify_relator(const Word& r, std::size_t max_piece = 0);

}  // namespace ac
