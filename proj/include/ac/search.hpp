#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ac/conjugacy.hpp"
#include "ac/moves.hpp"
#include "ac/word.hpp"

namespace ac {

enum class SearchMode : std::uint8_t { enumerate = 0, trivialize = 1 };

struct SearchConfig {
  Pair seed;
  std::size_t L = 10;
  unsigned D = kDefaultRounds;
  std::size_t total_bound = 0;  // 0 means 2L + 2
  SearchMode mode = SearchMode::enumerate;
  // Products r_i r_j^{+-1} of length <= L as extra neighbors.
  bool ac1_products = true;

  unsigned threads = 1;
  // Pairs popped per expansion round. Fixed independently of `threads` so
  // that every thread count visits pairs in the same order.
  std::size_t batch_size = 64;
  // Stop (not abort) after this many expansions; 0 = no limit.
  std::size_t max_expansions = 0;
  // Guards; 0 = no limit. Tripping one aborts with a partial report.
  std::size_t max_visited = 0;
  std::size_t memory_limit_bytes = 0;

  std::string checkpoint_path;
  std::size_t checkpoint_every = 0;  // expansions between checkpoints

  std::size_t bound() const noexcept { return total_bound != 0 ? total_bound : 2 * L + 2; }
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Neighbor {
  Pair pair;                // full_nf
  std::vector<Move> moves;  // from the parent normal form, before NF
};

// ACM substitutions and bounded AC1 products of a normal form, each reduced
// to full_nf and filtered by the configured bounds.
std::vector<Neighbor> neighbors(const Pair& p, const SearchConfig& cfg);

struct SearchReport {
  std::map<std::size_t, std::size_t> classes;  // total length -> normal forms
  std::size_t visited = 0;
  std::size_t expansions = 0;
  double seconds = 0;
  bool complete = false;     // frontier exhausted or target reached
  bool trivialized = false;
  std::vector<Move> witness;  // seed -> (x, y), trivialize mode
  std::size_t witness_moves = 0;  // ACM / AC1 edges in the witness
  bool aborted = false;
  std::string abort_reason;

  // Ordered pairs: (u, v) and (v, u) are counted separately, so each
  // normal-form class contributes two.
  std::map<std::size_t, std::size_t> pairs() const {
    std::map<std::size_t, std::size_t> out;
    for (const auto& [t, c] : classes) out[t] = 2 * c;
    return out;
  }
};

class Search {
 public:
  explicit Search(SearchConfig cfg);
  // Resumes from a checkpoint. The search parameters come from the file;
  // run-time settings (threads, guards, checkpointing) from `runtime`.
  static Search restore(const std::string& path, const SearchConfig& runtime);

  SearchReport run();
  void checkpoint(const std::string& path) const;

  const SearchConfig& config() const noexcept { return cfg_; }
  std::size_t visited() const noexcept { return nodes_.size(); }
  std::vector<Pair> visited_pairs() const;

 private:
  struct Node {
    Pair pair;
    std::uint32_t parent;
    std::vector<Move> edge;
  };
  struct FrontierLess {
    const std::vector<Node>* nodes;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return PairPriorityLess{}((*nodes)[b].pair, (*nodes)[a].pair);
    }
  };

  Search() = default;
  bool insert(Pair p, std::uint32_t parent, std::vector<Move> edge);
  std::size_t memory_estimate() const noexcept;
  void fill_witness(SearchReport& report) const;
  SearchReport report(double seconds) const;
  void expand_batch(const std::vector<std::uint32_t>& batch, std::vector<std::vector<Neighbor>>& out,
                    std::vector<std::exception_ptr>& errors) const;

  SearchConfig cfg_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint32_t> frontier_;  // heap under FrontierLess
  std::map<std::size_t, std::size_t> classes_;
  std::size_t expansions_ = 0;
  std::size_t key_bytes_ = 0;
  std::uint32_t target_ = UINT32_MAX;
};

SearchReport run_search(const SearchConfig& cfg);

}  // namespace ac
