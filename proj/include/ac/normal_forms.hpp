#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ac/word.hpp"

namespace ac {

class DegeneratePresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OrbitTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Endomorphism of F(x, y) given by the images of x and y.
struct Substitution {
  Word image_x;
  Word image_y;

  Word apply(const Word& w) const;
  Pair apply(const Pair& p) const { return {apply(p.first), apply(p.second)}; }
  // Composition: (this after other)(w) = this(other(w)).
  Substitution after(const Substitution& other) const { return {apply(other.image_x), apply(other.image_y)}; }
  std::string str() const { return image_x.str() + " " + image_y.str(); }
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct WhiteheadMove {
  Substitution map;
  bool length_preserving;
};

// The 20 Whitehead automorphisms of F(x, y): entries 0..11 are the
// multiplier moves, 12..19 the letter permutations (identity included).
std::span<const WhiteheadMove> whitehead_moves();
inline constexpr std::size_t kNonLengthPreservingMoves = 12;

// Image of a cyclic word, cyclically reduced.
Word apply_whitehead(const Word& w, const WhiteheadMove& m);

// Least representative under swap, component inversion and conjugation.
Pair cyclic_nf(const Pair& p);

struct Minimization {
  Pair pair;                        // cyclically reduced components
  std::vector<std::size_t> applied;  // indices into whitehead_moves()
};
// Greedy descent over the multiplier moves: take the largest decrease of
// the total cyclic length, ties to the lowest table index.
Minimization minimize_total_length(const Pair& p);

inline constexpr std::size_t kDefaultOrbitCap = 100'000;

// Cyclic normal forms reachable from a Whitehead-minimal pair through
// moves that keep the total length.
std::vector<Pair> min_level_orbit(const Pair& minimal, std::size_t cap = kDefaultOrbitCap);

// Least pair in the class generated by swap, inversion, conjugation and
// Aut(F2).
Pair full_nf(const Pair& p, std::size_t cap = kDefaultOrbitCap);

}  // namespace ac
