#include "ac/moves.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "ac/weighted_digraph.hpp"

namespace ac {

namespace {

int other(int i) { return 3 - i; }

void check_index(int i, const char* what) {
  if (i != 1 && i != 2) throw std::invalid_argument(std::string(what) + ": component index must be 1 or 2");
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_index(std::string_view tok) {
  if (tok == "1") return 1;
  if (tok == "2") return 2;
  throw ParseError("component index must be 1 or 2, got '" + std::string(tok) + "'", 0);
}

class TemplateParser {
 public:
  TemplateParser(std::string_view text, long long k, const std::map<std::string, Word>& vars)
      : text_(text), k_(k), vars_(vars) {}

  Word run() {
    Word w = sequence();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("template '" + std::string(text_) + "': " + what + " at position " + std::to_string(pos_), pos_);
  }
  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  Word sequence() {
    Word w;
    while (pos_ < text_.size() && !at(')')) w.append(item());
    return w;
  }

  Word item() {
    Word base = atom();
    if (!at('^')) return base;
    ++pos_;
    return base.power(exponent());
  }

  Word atom() {
    const char c = text_[pos_];
    switch (c) {
      case 'x': case 'X': case 'y': case 'Y': case '1':
        ++pos_;
        return Word::parse(std::string_view(&c, 1));
      case '(': {
        ++pos_;
        Word inner = sequence();
        if (!at(')')) fail("missing ')'");
        ++pos_;
        return inner;
      }
      case '$': {
        const std::size_t begin = ++pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        const std::string name(text_.substr(begin, pos_ - begin));
        const auto it = vars_.find(name);
        if (it == vars_.end()) fail("unknown variable '" + name + "'");
        return it->second;
      }
      default:
        fail(std::string("invalid character '") + c + "'");
    }
  }

  long long exponent() {
    if (!at('{')) {
      bool negative = at('-');
      if (negative) ++pos_;
      const long long v = number();
      return negative ? -v : v;
    }
    ++pos_;
    long long total = 0;
    int sign = 1;
    if (at('-')) {
      sign = -1;
      ++pos_;
    }
    for (;;) {
      total += sign * term();
      if (at('+')) {
        sign = 1;
      } else if (at('-')) {
        sign = -1;
      } else {
        break;
      }
      ++pos_;
    }
    if (!at('}')) fail("missing '}'");
    ++pos_;
    return total;
  }

  long long term() {
    long long coefficient = 1;
    const bool has_number = pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    if (has_number) coefficient = number();
    if (at('k')) {
      ++pos_;
      return coefficient * k_;
    }
    if (!has_number) fail("expected number or k");
    return coefficient;
  }

  long long number() {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("expected number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  std::string_view text_;
  long long k_;
  const std::map<std::string, Word>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Move::str() const {
  switch (kind) {
    case MoveKind::AC1: return "AC1 " + std::to_string(i) + " " + std::to_string(j);
    case MoveKind::AC2: return "AC2 " + std::to_string(i);
    case MoveKind::AC3: return "AC3 " + std::to_string(i) + " " + word.str();
    case MoveKind::ACM: return "ACM " + std::to_string(i) + " " + word.str();
    case MoveKind::AUT: return "AUT " + aut.str();
    case MoveKind::NF: return "NF";
  }
  return {};
}

Move Move::parse(std::string_view line) {
  const auto tok = split(line);
  if (tok.empty()) throw ParseError("empty move", 0);
  auto expect_args = [&](std::size_t n) {
    if (tok.size() != n + 1) {
      throw ParseError(std::string(tok[0]) + " takes " + std::to_string(n) + " argument(s)", 0);
    }
  };
  if (tok[0] == "AC1") {
    expect_args(2);
    const int i = parse_index(tok[1]), j = parse_index(tok[2]);
    if (i == j) throw ParseError("AC1 needs two distinct components", 0);
    return ac1(i, j);
  }
  if (tok[0] == "AC2") {
    expect_args(1);
    return ac2(parse_index(tok[1]));
  }
  if (tok[0] == "AC3") {
    expect_args(2);
    return ac3(parse_index(tok[1]), Word::parse(tok[2]));
  }
  if (tok[0] == "ACM") {
    expect_args(2);
    return acm(parse_index(tok[1]), Word::parse(tok[2]));
  }
  if (tok[0] == "AUT") {
    expect_args(2);
    return automorphism({Word::parse(tok[1]), Word::parse(tok[2])});
  }
  if (tok[0] == "NF") {
    expect_args(0);
    return nf();
  }
  throw ParseError("unknown move '" + std::string(tok[0]) + "'", 0);
}

Pair apply_ac1(const Pair& p, int i, int j) {
  check_index(i, "AC1");
  check_index(j, "AC1");
  if (i == j) throw std::invalid_argument("AC1: components must differ");
  Pair out = p;
  out[i - 1] = p[i - 1] * p[j - 1];
  return out;
}

Pair apply_ac2(const Pair& p, int i) {
  check_index(i, "AC2");
  Pair out = p;
  out[i - 1] = p[i - 1].inverse();
  return out;
}

Pair apply_ac3(const Pair& p, int i, const Word& w) {
  check_index(i, "AC3");
  Pair out = p;
  out[i - 1] = w.inverse() * p[i - 1] * w;
  return out;
}

std::optional<unsigned> acm_min_rounds(const Pair& p, int i, const Word& u_prime, std::size_t L, unsigned max_D) {
  check_index(i, "ACM");
  const Word target = cyclic_reduce(u_prime).core;
  if (L != 0 && target.size() > L) return std::nullopt;
  const Word u = cyclic_reduce(p[i - 1]).core;
  const Word v = cyclic_reduce(p[other(i) - 1]).core;
  if (u.empty() || target.empty()) {
    if (u.empty() && target.empty()) return 0;
    return std::nullopt;
  }
  // <x, y | 1> is free: conjugacy is free conjugacy.
  if (v.empty()) {
    if (free_conjugate(u, target) || free_conjugate(u, target.inverse())) return 0;
    return std::nullopt;
  }
  return min_rounds_for(u, v, target, max_D);
}

Pair apply_acm(const Pair& p, int i, const Word& u_prime, std::size_t L, unsigned D) {
  if (!acm_min_rounds(p, i, u_prime, L, D)) {
    throw MoveRejected("ACM " + std::to_string(i) + " " + u_prime.str() + ": not in U_" + std::to_string(D) + "(" +
                       p[i - 1].str() + ", " + p[other(i) - 1].str() + ") with L=" + std::to_string(L));
  }
  Pair out = p;
  out[i - 1] = u_prime;
  return out;
}

bool is_automorphism(const Substitution& phi) {
  if (phi.image_x.empty() || phi.image_y.empty()) return false;
  // Stallings: <a, b> = F2 iff the folded bouquet of a and b is the rose.
  WeightedDigraph g;
  const Vertex base = g.add_vertex();
  g.set_root(base);
  g.attach_circuit(base, phi.image_x, 0);
  g.attach_circuit(base, phi.image_y, 0);
  const WeightedDigraph folded = fold(g);
  return folded.vertex_count() == 1 && folded.edge_count() == 2;
}

Pair apply_aut(const Pair& p, const Substitution& phi) {
  if (!is_automorphism(phi)) throw MoveRejected("AUT " + phi.str() + ": images do not form a basis");
  return phi.apply(p);
}

Pair apply_move(const Pair& p, const Move& m, std::size_t L, unsigned D) {
  switch (m.kind) {
    case MoveKind::AC1: return apply_ac1(p, m.i, m.j);
    case MoveKind::AC2: return apply_ac2(p, m.i);
    case MoveKind::AC3: return apply_ac3(p, m.i, m.word);
    case MoveKind::ACM: return apply_acm(p, m.i, m.word, L, D);
    case MoveKind::AUT: return apply_aut(p, m.aut);
    case MoveKind::NF: return full_nf(p);
  }
  throw std::logic_error("apply_move: bad kind");
}

ReplayReport replay(const Pair& p, std::span<const Move> script, std::size_t L, unsigned max_D) {
  ReplayReport report;
  report.final_pair = p;
  for (std::size_t idx = 0; idx < script.size(); ++idx) {
    const Move& m = script[idx];
    ReplayStep step{m, {}, std::nullopt};
    try {
      if (m.kind == MoveKind::ACM) {
        step.rounds = acm_min_rounds(report.final_pair, m.i, m.word, L, max_D);
        if (!step.rounds) {
          throw MoveRejected("ACM target not found at D <= " + std::to_string(max_D));
        }
        step.result = report.final_pair;
        step.result[m.i - 1] = m.word;
      } else {
        step.result = apply_move(report.final_pair, m);
      }
    } catch (const std::exception& e) {
      report.ok = false;
      report.failed_index = idx;
      report.reason = e.what();
      return report;
    }
    report.final_pair = step.result;
    report.steps.push_back(std::move(step));
  }
  return report;
}

Word expand_template(std::string_view text, long long k, const std::map<std::string, Word>& vars) {
  return TemplateParser(text, k, vars).run();
}

Script parse_script(std::string_view text, long long k) {
  Script script;
  std::map<std::string, Word> vars;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split(line);
    if (tok.empty()) continue;
    try {
      auto word = [&](std::size_t n) { return expand_template(tok.at(n), k, vars); };
      if (tok[0] == "let") {
        if (tok.size() != 4 || tok[2] != "=") throw ParseError("expected 'let <name> = <template>'", 0);
        vars[std::string(tok[1])] = word(3);
      } else if (tok[0] == "start" || tok[0] == "expect") {
        if (tok.size() != 3) throw ParseError("expected two templates", 0);
        (tok[0] == "start" ? script.start : script.expect) = Pair{word(1), word(2)};
      } else if (tok[0] == "AC3" || tok[0] == "ACM") {
        if (tok.size() != 3) throw ParseError(std::string(tok[0]) + " takes 2 argument(s)", 0);
        const int i = parse_index(tok[1]);
        script.moves.push_back(tok[0] == "AC3" ? Move::ac3(i, word(2)) : Move::acm(i, word(2)));
      } else if (tok[0] == "AUT") {
        if (tok.size() != 3) throw ParseError("AUT takes 2 argument(s)", 0);
        script.moves.push_back(Move::automorphism({word(1), word(2)}));
      } else {
        script.moves.push_back(Move::parse(line));
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return script;
}

std::string format_script(std::span<const Move> moves) {
  std::ostringstream out;
  for (const Move& m : moves) out << m.str() << '\n';
  return out.str();
}

}  // namespace ac
