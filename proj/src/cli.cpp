#include "ac/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ac/classify.hpp"
#include "ac/conjugacy.hpp"
#include "ac/moves.hpp"
#include "ac/normal_forms.hpp"
#include "ac/search.hpp"

namespace ac {

namespace {

constexpr const char* kFormatVersion = "1";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Pair parse_pair_arg(const std::string& text) {
  try {
    return Pair::parse(text);
  } catch (const ParseError& e) {
    throw UsageError("bad pair '" + text + "': " + e.what());
  }
}

Word parse_word_arg(const std::string& text) {
  try {
    return Word::parse(text);
  } catch (const ParseError& e) {
    throw UsageError("bad word '" + text + "': " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t memory_limit_from_env() {
  const char* value = std::getenv(kMemoryLimitEnv);
  if (value == nullptr || *value == '\0') return 0;
  char* end = nullptr;
  const unsigned long long mb = std::strtoull(value, &end, 10);
  if (*end != '\0') throw UsageError(std::string(kMemoryLimitEnv) + " must be an integer number of MiB");
  return static_cast<std::size_t>(mb) << 20;
}

struct SearchFlags {
  std::string seed;
  std::size_t L = 10;
  unsigned D = kDefaultRounds;
  std::size_t total_bound = 0;
  unsigned threads = 1;
  std::size_t batch = 64;
  std::size_t max_visited = 0;
  bool no_ac1 = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Seed pair, e.g. \"xyxYXY xxxYYYY\"")->required();
    cmd->add_option("-L", L, "Per-word length bound")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("-D", D, "Completion rounds")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--total-bound", total_bound, "Pair total length bound (0: 2L+2)")->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--batch", batch, "Pairs expanded per round")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--max-visited", max_visited, "Abort after this many normal forms (0: no limit)")
        ->capture_default_str();
    cmd->add_flag("--no-ac1", no_ac1, "Do not use AC1 products as neighbors");
  }

  SearchConfig config(SearchMode mode) const {
    SearchConfig cfg;
    cfg.seed = parse_pair_arg(seed);
    cfg.L = L;
    cfg.D = D;
    cfg.total_bound = total_bound;
    cfg.mode = mode;
    cfg.ac1_products = !no_ac1;
    cfg.threads = threads;
    cfg.batch_size = batch;
    cfg.max_visited = max_visited;
    cfg.memory_limit_bytes = memory_limit_from_env();
    return cfg;
  }
};

void print_summary(std::ostream& err, const SearchReport& r) {
  err << "visited " << r.visited << " expansions " << r.expansions << " seconds " << r.seconds << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Andrews-Curtis search over balanced two-generator presentations", "ac"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(34);
  app.set_version_flag("--version", std::string("ac ") + kFormatVersion);
  app.footer("Words use x, y and X = x^-1, Y = y^-1; \"1\" is the empty word.\n"
             "Exit status: 0 ok, 1 failed check, 2 search exhausted, 64 usage, 70 guard tripped.\n"
             "Environment: " + std::string(kMemoryLimitEnv) + " caps the search memory estimate (MiB).");

  // conjugates
  auto* conj = app.add_subcommand("conjugates", "Bounded conjugates of u in <x, y | v> (ACM targets)");
  std::string conj_u, conj_v;
  std::size_t conj_L = 10;
  unsigned conj_D = kDefaultRounds;
  bool conj_classes = false;
  conj->add_option("--u", conj_u, "Word to conjugate")->required();
  conj->add_option("--v", conj_v, "Relator")->required();
  conj->add_option("-L", conj_L, "Length bound")->check(CLI::Range(1, 64))->capture_default_str();
  conj->add_option("-D", conj_D, "Completion rounds")->check(CLI::NonNegativeNumber)->capture_default_str();
  conj->add_flag("--classes", conj_classes, "Print least cyclic representatives only");

  // nf
  auto* nf = app.add_subcommand("nf", "Normal form of a pair");
  std::string nf_pair;
  bool nf_cyclic = false;
  nf->add_option("pair", nf_pair, "Pair \"u v\"")->required();
  nf->add_flag("--cyclic-only", nf_cyclic, "Cyclic normal form, no automorphisms");

  // enumerate
  auto* en = app.add_subcommand("enumerate", "Enumerate the bounded component of a seed; TSV of counts");
  SearchFlags en_flags;
  en_flags.attach(en);
  std::string en_checkpoint, en_resume;
  std::size_t en_every = 0;
  bool en_classes = false;
  en->add_option("--checkpoint", en_checkpoint, "Checkpoint file written on guard trips and periodically");
  en->add_option("--checkpoint-every", en_every, "Expansions between checkpoints (0: only on abort)")
      ->capture_default_str();
  en->add_option("--resume", en_resume, "Resume from a checkpoint");
  en->add_flag("--classes", en_classes, "Count normal-form classes instead of ordered pairs");

  // trivialize
  auto* tr = app.add_subcommand("trivialize", "Search for a path from the seed to (x, y)");
  SearchFlags tr_flags;
  tr_flags.L = 12;
  tr_flags.attach(tr);

  // classify
  auto* cl = app.add_subcommand("classify", "Baumslag-Solitar type detection for relators; TSV");
  std::string cl_file;
  std::size_t cl_max_piece = 0;
  cl->add_option("--relators", cl_file, "File with one relator per line (- for stdin)")->required();
  cl->add_option("--max-piece", cl_max_piece, "Bound on |u| and |v| (0: none)")->capture_default_str();

  // replay
  auto* rp = app.add_subcommand("replay", "Replay a move script, verifying ACM steps");
  std::string rp_script, rp_start;
  long long rp_n = 3;
  std::size_t rp_L = 0;
  unsigned rp_D = 4;
  rp->add_option("--script", rp_script, "Script file")->required();
  rp->add_option("-n", rp_n, "Script parameter k")->capture_default_str();
  rp->add_option("--start", rp_start, "Start pair (overrides the script's start line)");
  rp->add_option("-L", rp_L, "Length bound for ACM targets (0: none)")->capture_default_str();
  rp->add_option("-D", rp_D, "Largest completion depth tried per ACM step")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "ac " << kFormatVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ac: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*conj) {
      const Word u = cyclic_reduce(parse_word_arg(conj_u)).core;
      const Word v = cyclic_reduce(parse_word_arg(conj_v)).core;
      if (u.empty() || v.empty()) throw UsageError("u and v must be nontrivial");
      const auto words = conj_classes ? acm_conjugate_classes(u, v, conj_L, conj_D)
                                      : acm_conjugates(u, v, conj_L, conj_D).words;
      for (const Word& w : words) out << w.str() << '\n';
      return kExitOk;
    }
    if (*nf) {
      const Pair p = parse_pair_arg(nf_pair);
      try {
        out << (nf_cyclic ? cyclic_nf(p) : full_nf(p)).str() << '\n';
      } catch (const DegeneratePresentation& e) {
        throw UsageError(e.what());
      }
      return kExitOk;
    }
    if (*en) {
      SearchConfig cfg = en_flags.config(SearchMode::enumerate);
      cfg.checkpoint_path = en_checkpoint;
      cfg.checkpoint_every = en_every;
      Search search = en_resume.empty() ? Search(cfg) : Search::restore(en_resume, cfg);
      if (!en_resume.empty()) {
        const SearchConfig& stored = search.config();
        if (stored.L != cfg.L || stored.D != cfg.D || stored.bound() != cfg.bound() ||
            full_nf(stored.seed) != full_nf(cfg.seed) || stored.ac1_products != cfg.ac1_products) {
          throw UsageError("checkpoint " + en_resume + " was written with different search parameters");
        }
      }
      const SearchReport r = search.run();
      out << "# ac enumerate v" << kFormatVersion << " L=" << cfg.L << " D=" << cfg.D << " bound=" << cfg.bound()
          << " count=" << (en_classes ? "classes" : "pairs") << '\n';
      for (const auto& [t, c] : en_classes ? r.classes : r.pairs()) out << t << '\t' << c << '\n';
      print_summary(err, r);
      if (r.aborted) {
        err << "ac: guard tripped: " << r.abort_reason << '\n';
        return kExitGuard;
      }
      return kExitOk;
    }
    if (*tr) {
      const SearchConfig cfg = tr_flags.config(SearchMode::trivialize);
      const SearchReport r = run_search(cfg);
      print_summary(err, r);
      if (r.aborted) {
        err << "ac: guard tripped: " << r.abort_reason << '\n';
        return kExitGuard;
      }
      if (!r.trivialized) {
        out << "exhausted\n";
        return kExitExhausted;
      }
      out << "start " << cfg.seed.str() << '\n' << format_script(r.witness) << "expect x y\n";
      return kExitOk;
    }
    if (*cl) {
      std::string text;
      if (cl_file == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
      } else {
        text = read_file(cl_file);
      }
      std::istringstream lines(text);
      out << "# ac classify v" << kFormatVersion << "\trelator\tclass\twitness\n";
      for (std::string line; std::getline(lines, line);) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line.erase(line.find_last_not_of(" \t\r") + 1);
        line.erase(0, line.find_first_not_of(" \t"));
        if (line.empty()) continue;
        const Word r = cyclic_reduce(parse_word_arg(line)).core;
        const RelatorClass c = classify_relator(r, cl_max_piece);
        out << line << '\t' << to_string(c.tag) << '\t' << (c.witness ? c.witness->str() : "-") << '\n';
      }
      return kExitOk;
    }
    if (*rp) {
      Script script;
      try {
        script = parse_script(read_file(rp_script), rp_n);
      } catch (const ParseError& e) {
        throw UsageError(rp_script + ": " + e.what());
      }
      if (!rp_start.empty()) script.start = parse_pair_arg(rp_start);
      if (!script.start) throw UsageError("no start pair: use --start or a 'start' line");
      const ReplayReport rep = replay(*script.start, script.moves, rp_L, rp_D);
      out << "start\t" << script.start->str() << '\n';
      for (const auto& step : rep.steps) {
        out << step.move.str() << '\t' << step.result.str();
        if (step.rounds) out << "\tD=" << *step.rounds;
        out << '\n';
      }
      if (!rep.ok) {
        out << "failed at step " << rep.failed_index + 1 << ": " << rep.reason << '\n';
        return kExitFailure;
      }
      if (script.expect && rep.final_pair != *script.expect) {
        out << "final pair " << rep.final_pair.str() << " differs from expected " << script.expect->str() << '\n';
        return kExitFailure;
      }
      out << "ok\t" << rep.final_pair.str() << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "ac: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckpointError& e) {
    err << "ac: " << e.what() << '\n';
    return kExitFailure;
  } catch (const GraphTooLarge& e) {
    err << "ac: guard tripped: " << e.what() << '\n';
    return kExitGuard;
  } catch (const OrbitTooLarge& e) {
    err << "ac: guard tripped: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    err << "ac: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ac
