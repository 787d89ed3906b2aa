#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ac/conjugacy.hpp"
#include "ac/normal_forms.hpp"
#include "ac/word.hpp"

namespace ac {

class MoveRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NF replaces the pair by full_nf; it appears only in search witnesses.
enum class MoveKind { AC1, AC2, AC3, ACM, AUT, NF };

// Component indices are 1-based, as in the script format.
struct Move {
  MoveKind kind = MoveKind::NF;
  int i = 0;
  int j = 0;
  Word word;
  Substitution aut;

  static Move ac1(int i, int j) { return {MoveKind::AC1, i, j, {}, {}}; }
  static Move ac2(int i) { return {MoveKind::AC2, i, 0, {}, {}}; }
  static Move ac3(int i, Word w) { return {MoveKind::AC3, i, 0, std::move(w), {}}; }
  static Move acm(int i, Word w) { return {MoveKind::ACM, i, 0, std::move(w), {}}; }
  static Move automorphism(Substitution phi) { return {MoveKind::AUT, 0, 0, {}, std::move(phi)}; }
  static Move nf() { return {}; }

  std::string str() const;
  // Parses one script line without templates, e.g. "ACM 2 xyxYXY".
  static Move parse(std::string_view line);

  friend bool operator==(const Move&, const Move&) = default;
};

Pair apply_ac1(const Pair& p, int i, int j);
Pair apply_ac2(const Pair& p, int i);
Pair apply_ac3(const Pair& p, int i, const Word& w);

// Replaces component i by u_prime if u_prime or its inverse lies in
// U_D(p_i, p_other) with length bound L. Throws MoveRejected otherwise.
Pair apply_acm(const Pair& p, int i, const Word& u_prime, std::size_t L, unsigned D);

// Least D <= max_D at which apply_acm accepts, or nullopt.
std::optional<unsigned> acm_min_rounds(const Pair& p, int i, const Word& u_prime, std::size_t L, unsigned max_D);

// True iff the images of x and y form a basis of F(x, y).
bool is_automorphism(const Substitution& phi);
// Throws MoveRejected when phi is not an automorphism.
Pair apply_aut(const Pair& p, const Substitution& phi);

// Applies a non-ACM move; ACM moves go through apply_acm.
Pair apply_move(const Pair& p, const Move& m, std::size_t L = 0, unsigned D = kDefaultRounds);

struct ReplayStep {
  Move move;
  Pair result;
  std::optional<unsigned> rounds;  // minimal D, ACM steps only
};

struct ReplayReport {
  bool ok = true;
  Pair final_pair;
  std::size_t failed_index = 0;
  std::string reason;
  std::vector<ReplayStep> steps;
};

// Applies the moves in order. ACM steps are checked at D = 0..max_D and the
// least accepting D is recorded; L = 0 uses the cyclic length of each target.
ReplayReport replay(const Pair& p, std::span<const Move> script, std::size_t L, unsigned max_D);

// Script text: one move per line, plus
//   # comment
//   let <name> = <template>
//   start <template> <template>
//   expect <template> <template>
// Templates are words with groups and exponents, e.g. "x^{k}(YX)^{k}Y",
// "$c^{-1}xyx$c". `k` in an exponent is the script parameter.
struct Script {
  std::optional<Pair> start;
  std::optional<Pair> expect;
  std::vector<Move> moves;
};

Word expand_template(std::string_view text, long long k, const std::map<std::string, Word>& vars = {});
Script parse_script(std::string_view text, long long k);
std::string format_script(std::span<const Move> moves);

}  // namespace ac
