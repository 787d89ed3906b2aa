#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ac/classify.hpp"
#include "ac/conjugacy.hpp"
#include "ac/moves.hpp"
#include "ac/normal_forms.hpp"
#include "ac/search.hpp"
#include "ac/word.hpp"

namespace py = pybind11;
using namespace ac;

namespace {

using StrPair = std::pair<std::string, std::string>;

Pair to_pair(const std::string& u, const std::string& v) { return {Word::parse(u), Word::parse(v)}; }
StrPair from_pair(const Pair& p) { return {p.first.str(), p.second.str()}; }

std::vector<std::string> strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(w.str());
  return out;
}

std::vector<std::string> move_lines(const std::vector<Move>& moves) {
  std::vector<std::string> out;
  for (const auto& m : moves) out.push_back(m.str());
  return out;
}

SearchConfig search_config(const std::string& u, const std::string& v, std::size_t L, unsigned D,
                           unsigned threads, std::size_t max_visited, SearchMode mode) {
  SearchConfig cfg;
  cfg.seed = to_pair(u, v);
  cfg.L = L;
  cfg.D = D;
  cfg.threads = threads;
  cfg.max_visited = max_visited;
  cfg.mode = mode;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Andrews-Curtis search core";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MoveRejected>(m, "MoveRejected", PyExc_ValueError);
  py::register_exception<DegeneratePresentation>(m, "DegeneratePresentation", PyExc_ValueError);
  py::register_exception<GraphTooLarge>(m, "GraphTooLarge", PyExc_RuntimeError);
  py::register_exception<OrbitTooLarge>(m, "OrbitTooLarge", PyExc_RuntimeError);

  m.def("reduce", [](const std::string& w) { return Word::parse(w).str(); }, py::arg("word"));
  m.def("cyclic_reduce", [](const std::string& w) { return cyclic_reduce(Word::parse(w)).core.str(); },
        py::arg("word"));
  m.def("least_cyclic_representative",
        [](const std::string& w) { return least_cyclic_representative(Word::parse(w)).str(); }, py::arg("word"));
  m.def("free_conjugate",
        [](const std::string& a, const std::string& b) { return free_conjugate(Word::parse(a), Word::parse(b)); },
        py::arg("a"), py::arg("b"));

  m.def("whitehead_moves", [] {
    std::vector<std::tuple<std::string, std::string, bool>> out;
    for (const auto& w : whitehead_moves()) out.emplace_back(w.map.image_x.str(), w.map.image_y.str(), w.length_preserving);
    return out;
  });
  m.def("cyclic_nf", [](const std::string& u, const std::string& v) { return from_pair(cyclic_nf(to_pair(u, v))); },
        py::arg("u"), py::arg("v"));
  m.def("full_nf", [](const std::string& u, const std::string& v) { return from_pair(full_nf(to_pair(u, v))); },
        py::arg("u"), py::arg("v"));

  m.def(
      "acm_conjugates",
      [](const std::string& u, const std::string& v, std::size_t L, unsigned D, bool classes) {
        const Word a = Word::parse(u), b = Word::parse(v);
        py::gil_scoped_release release;
        return classes ? strs(acm_conjugate_classes(a, b, L, D)) : strs(acm_conjugates(a, b, L, D).words);
      },
      py::arg("u"), py::arg("v"), py::arg("L"), py::arg("D") = kDefaultRounds, py::arg("classes") = false);
  m.def(
      "apply_acm",
      [](const std::string& u, const std::string& v, int i, const std::string& w, std::size_t L, unsigned D) {
        return from_pair(apply_acm(to_pair(u, v), i, Word::parse(w), L, D));
      },
      py::arg("u"), py::arg("v"), py::arg("i"), py::arg("replacement"), py::arg("L") = 0,
      py::arg("D") = kDefaultRounds);

  m.def(
      "enumerate",
      [](const std::string& u, const std::string& v, std::size_t L, unsigned D, unsigned threads, bool classes,
         std::size_t max_visited) {
        const SearchConfig cfg = search_config(u, v, L, D, threads, max_visited, SearchMode::enumerate);
        SearchReport r;
        {
          py::gil_scoped_release release;
          r = run_search(cfg);
        }
        if (r.aborted) throw std::runtime_error("guard tripped: " + r.abort_reason);
        return classes ? r.classes : r.pairs();
      },
      py::arg("u"), py::arg("v"), py::arg("L"), py::arg("D") = kDefaultRounds, py::arg("threads") = 1,
      py::arg("classes") = false, py::arg("max_visited") = 0);
  m.def(
      "trivialize",
      [](const std::string& u, const std::string& v, std::size_t L, unsigned D,
         std::size_t max_visited) -> std::optional<std::vector<std::string>> {
        const SearchConfig cfg = search_config(u, v, L, D, 1, max_visited, SearchMode::trivialize);
        SearchReport r;
        {
          py::gil_scoped_release release;
          r = run_search(cfg);
        }
        if (r.aborted) throw std::runtime_error("guard tripped: " + r.abort_reason);
        if (!r.trivialized) return std::nullopt;
        return move_lines(r.witness);
      },
      py::arg("u"), py::arg("v"), py::arg("L") = 12, py::arg("D") = kDefaultRounds, py::arg("max_visited") = 0);

  m.def(
      "replay",
      [](const std::string& script, long long n, std::optional<StrPair> start, std::size_t L, unsigned D) {
        Script s = parse_script(script, n);
        if (start) s.start = to_pair(start->first, start->second);
        if (!s.start) throw std::invalid_argument("no start pair");
        const ReplayReport r = replay(*s.start, s.moves, L, D);
        py::dict out;
        out["ok"] = r.ok && (!s.expect || r.final_pair == *s.expect);
        out["final"] = from_pair(r.final_pair);
        out["reason"] = r.ok ? std::string() : r.reason;
        py::list rounds;
        for (const auto& st : r.steps) {
          if (st.rounds) rounds.append(*st.rounds);
        }
        out["rounds"] = rounds;
        return out;
      },
      py::arg("script"), py::arg("n") = 3, py::arg("start") = py::none(), py::arg("L") = 0, py::arg("D") = 4);

  m.def(
      "classify",
      [](const std::string& r) -> std::pair<std::string, std::optional<std::string>> {
        const RelatorClass c = classify_relator(Word::parse(r));
        return {to_string(c.tag), c.witness ? std::optional<std::string>(c.witness->str()) : std::nullopt};
      },
      py::arg("relator"));
}
