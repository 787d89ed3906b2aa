#include "ac/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <thread>

#include <boost/crc.hpp>

#include "ac/normal_forms.hpp"

namespace ac {

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'A', 'C', 'S', 'E', 'A', 'R', 'C', 'H'};
constexpr std::uint32_t kCheckpointVersion = 1;
constexpr std::uint32_t kNone = UINT32_MAX;
constexpr std::size_t kNodeOverhead = 160;

class Writer {
 public:
  template <class T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void put_bytes(std::string_view s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  template <class T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string_view get_bytes() {
    const auto n = get<std::uint32_t>();
    need(n);
    const auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw CheckpointError("checkpoint truncated");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

std::string config_echo(const SearchConfig& cfg) {
  Writer w;
  w.put<std::uint64_t>(cfg.L);
  w.put<std::uint32_t>(cfg.D);
  w.put<std::uint64_t>(cfg.bound());
  w.put<std::uint8_t>(static_cast<std::uint8_t>(cfg.mode));
  w.put<std::uint8_t>(cfg.ac1_products ? 1 : 0);
  w.put<std::uint64_t>(cfg.batch_size);
  w.put_bytes(pack_pair(cfg.seed));
  return w.str();
}

std::uint32_t crc32(std::string_view a, std::string_view b) {
  boost::crc_32_type crc;
  crc.process_bytes(a.data(), a.size());
  crc.process_bytes(b.data(), b.size());
  return crc.checksum();
}

bool within_bounds(const Pair& p, const SearchConfig& cfg) {
  if (p.total_length() > cfg.bound()) return false;
  return p.first.size() <= cfg.L || p.second.size() <= cfg.L;
}

void add_candidate(std::vector<Neighbor>& out, const Pair& candidate, std::vector<Move> moves, const SearchConfig& cfg) {
  if (candidate.total_length() > cfg.bound()) return;
  if (cyclic_reduce(candidate.first).core.empty() || cyclic_reduce(candidate.second).core.empty()) return;
  Pair nf = full_nf(candidate);
  if (!within_bounds(nf, cfg)) return;
  out.push_back({std::move(nf), std::move(moves)});
}

}  // namespace

std::vector<Neighbor> neighbors(const Pair& p, const SearchConfig& cfg) {
  std::vector<Neighbor> out;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Word& u = p[i];
    const Word& o = p[j];
    for (const Word& w : acm_conjugate_classes(u, o, cfg.L, cfg.D)) {
      if (w == u) continue;
      Pair c = p;
      c[i] = w;
      add_candidate(out, c, {Move::acm(i + 1, w)}, cfg);
    }
    if (!cfg.ac1_products) continue;
    for (int inverted = 0; inverted < 2; ++inverted) {
      const Word product = u * (inverted ? o.inverse() : o);
      if (product.size() > cfg.L) continue;
      Pair c = p;
      c[i] = product;
      std::vector<Move> moves;
      if (inverted) moves.push_back(Move::ac2(j + 1));
      moves.push_back(Move::ac1(i + 1, j + 1));
      if (inverted) moves.push_back(Move::ac2(j + 1));
      add_candidate(out, c, std::move(moves), cfg);
    }
  }
  return out;
}

Search::Search(SearchConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.L == 0) throw std::invalid_argument("search: L must be at least 1");
  if (cfg_.threads == 0) throw std::invalid_argument("search: threads must be at least 1");
  if (cfg_.batch_size == 0) throw std::invalid_argument("search: batch size must be at least 1");
  if (std::llabs(exponent_matrix(cfg_.seed).det()) != 1) {
    throw std::invalid_argument("search: seed " + cfg_.seed.str() + " has |det| != 1");
  }
  insert(full_nf(cfg_.seed), kNone, {});
}

bool Search::insert(Pair p, std::uint32_t parent, std::vector<Move> edge) {
  std::string key = pack_pair(p);
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  const auto [it, fresh] = index_.try_emplace(std::move(key), id);
  if (!fresh) return false;
  key_bytes_ += it->first.size();
  ++classes_[p.total_length()];
  const bool is_target = p == Pair{Word::parse("x"), Word::parse("y")};
  nodes_.push_back({std::move(p), parent, std::move(edge)});
  frontier_.push_back(id);
  std::push_heap(frontier_.begin(), frontier_.end(), FrontierLess{&nodes_});
  if (is_target && target_ == kNone) target_ = id;
  return true;
}

std::size_t Search::memory_estimate() const noexcept {
  std::size_t bytes = key_bytes_ + nodes_.size() * kNodeOverhead + frontier_.size() * sizeof(std::uint32_t);
  return bytes;
}

void Search::expand_batch(const std::vector<std::uint32_t>& batch, std::vector<std::vector<Neighbor>>& out,
                          std::vector<std::exception_ptr>& errors) const {
  out.assign(batch.size(), {});
  errors.assign(batch.size(), nullptr);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < batch.size();) {
      try {
        out[k] = neighbors(nodes_[batch[k]].pair, cfg_);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < cfg_.threads; ++t) pool.emplace_back(work);
}

SearchReport Search::run() {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  std::size_t last_checkpoint = expansions_;
  std::vector<std::uint32_t> batch;
  std::vector<std::vector<Neighbor>> expanded;
  std::vector<std::exception_ptr> errors;
  const FrontierLess less{&nodes_};
  const bool parallel = cfg_.threads > 1;
  auto requeue = [&](std::size_t from) {
    for (std::size_t k = from; k < batch.size(); ++k) {
      frontier_.push_back(batch[k]);
      std::push_heap(frontier_.begin(), frontier_.end(), less);
    }
  };
  auto abort_with = [&](std::string reason) {
    if (!cfg_.checkpoint_path.empty()) checkpoint(cfg_.checkpoint_path);
    SearchReport r = report(elapsed());
    r.aborted = true;
    r.abort_reason = std::move(reason);
    return r;
  };
  auto found = [&] { return cfg_.mode == SearchMode::trivialize && target_ != kNone; };

  while (!frontier_.empty() && !found()) {
    if (cfg_.max_expansions != 0 && expansions_ >= cfg_.max_expansions) break;
    batch.clear();
    std::size_t limit = cfg_.batch_size;
    if (cfg_.max_expansions != 0) limit = std::min(limit, cfg_.max_expansions - expansions_);
    while (!frontier_.empty() && batch.size() < limit) {
      std::pop_heap(frontier_.begin(), frontier_.end(), less);
      batch.push_back(frontier_.back());
      frontier_.pop_back();
    }
    if (parallel) expand_batch(batch, expanded, errors);
    // Results are consumed in batch order whatever the thread count; a
    // single thread expands lazily so it can stop at the target.
    for (std::size_t k = 0; k < batch.size(); ++k) {
      std::vector<Neighbor> local;
      std::string failure;
      try {
        if (parallel) {
          if (errors[k]) std::rethrow_exception(errors[k]);
          local = std::move(expanded[k]);
        } else {
          local = neighbors(nodes_[batch[k]].pair, cfg_);
        }
      } catch (const std::exception& e) {
        failure = e.what();
      }
      if (!failure.empty()) {
        requeue(k);
        return abort_with(failure);
      }
      for (Neighbor& n : local) insert(std::move(n.pair), batch[k], std::move(n.moves));
      ++expansions_;
      if (found()) {
        requeue(k + 1);
        break;
      }
    }
    if (cfg_.max_visited != 0 && nodes_.size() > cfg_.max_visited) {
      return abort_with("visited set exceeds " + std::to_string(cfg_.max_visited) + " pairs");
    }
    if (cfg_.memory_limit_bytes != 0 && memory_estimate() > cfg_.memory_limit_bytes) {
      return abort_with("memory estimate exceeds " + std::to_string(cfg_.memory_limit_bytes) + " bytes");
    }
    if (!cfg_.checkpoint_path.empty() && cfg_.checkpoint_every != 0 &&
        expansions_ - last_checkpoint >= cfg_.checkpoint_every) {
      checkpoint(cfg_.checkpoint_path);
      last_checkpoint = expansions_;
    }
  }
  return report(elapsed());
}

SearchReport Search::report(double seconds) const {
  SearchReport r;
  r.classes = classes_;
  r.visited = nodes_.size();
  r.expansions = expansions_;
  r.seconds = seconds;
  r.trivialized = target_ != kNone;
  r.complete = frontier_.empty() || (cfg_.mode == SearchMode::trivialize && r.trivialized);
  if (cfg_.mode == SearchMode::trivialize && r.trivialized) fill_witness(r);
  return r;
}

void Search::fill_witness(SearchReport& report) const {
  std::vector<std::uint32_t> path;
  for (std::uint32_t id = target_; id != kNone; id = nodes_[id].parent) path.push_back(id);
  std::reverse(path.begin(), path.end());
  report.witness.push_back(Move::nf());
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto& edge = nodes_[path[k]].edge;
    report.witness.insert(report.witness.end(), edge.begin(), edge.end());
    report.witness.push_back(Move::nf());
    ++report.witness_moves;
  }
}

std::vector<Pair> Search::visited_pairs() const {
  std::vector<Pair> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.pair);
  return out;
}

void Search::checkpoint(const std::string& path) const {
  const std::string config = config_echo(cfg_);
  Writer body;
  body.put<std::uint64_t>(expansions_);
  body.put<std::uint32_t>(target_);
  body.put<std::uint32_t>(static_cast<std::uint32_t>(nodes_.size()));
  for (const auto& n : nodes_) {
    body.put_bytes(pack_pair(n.pair));
    body.put<std::uint32_t>(n.parent);
    body.put<std::uint32_t>(static_cast<std::uint32_t>(n.edge.size()));
    for (const auto& m : n.edge) body.put_bytes(m.str());
  }
  std::vector<std::uint32_t> frontier = frontier_;
  std::sort(frontier.begin(), frontier.end());
  body.put<std::uint32_t>(static_cast<std::uint32_t>(frontier.size()));
  for (auto id : frontier) body.put<std::uint32_t>(id);

  Writer head;
  head.put<std::uint32_t>(kCheckpointVersion);
  head.put_bytes(config);
  head.put<std::uint32_t>(crc32(config, body.str()));
  head.put<std::uint64_t>(body.str().size());

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
    out.write(kMagic, sizeof kMagic);
    out.write(head.str().data(), static_cast<std::streamsize>(head.str().size()));
    out.write(body.str().data(), static_cast<std::streamsize>(body.str().size()));
    if (!out) throw CheckpointError("short write on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Search Search::restore(const std::string& path, const SearchConfig& runtime) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path);
  const std::string data{std::istreambuf_iterator<char>(in), {}};
  if (data.size() < sizeof kMagic || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
    throw CheckpointError(path + " is not a search checkpoint");
  }
  Reader head(std::string_view(data).substr(sizeof kMagic));
  const auto version = head.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw CheckpointError("checkpoint version " + std::to_string(version) + ", expected " +
                          std::to_string(kCheckpointVersion));
  }
  const std::string_view config = head.get_bytes();
  const auto crc = head.get<std::uint32_t>();
  const auto body_size = head.get<std::uint64_t>();
  const std::size_t body_offset = data.size() - body_size;
  if (body_size > data.size() || body_offset != sizeof kMagic + 4 + 4 + config.size() + 4 + 8) {
    throw CheckpointError("checkpoint truncated");
  }
  const std::string_view body = std::string_view(data).substr(body_offset);
  if (crc32(config, body) != crc) throw CheckpointError("checkpoint checksum mismatch");

  Search s;
  s.cfg_ = runtime;
  Reader c(config);
  s.cfg_.L = c.get<std::uint64_t>();
  s.cfg_.D = c.get<std::uint32_t>();
  s.cfg_.total_bound = c.get<std::uint64_t>();
  s.cfg_.mode = static_cast<SearchMode>(c.get<std::uint8_t>());
  s.cfg_.ac1_products = c.get<std::uint8_t>() != 0;
  s.cfg_.batch_size = c.get<std::uint64_t>();
  s.cfg_.seed = unpack_pair(c.get_bytes());

  Reader b(body);
  s.expansions_ = b.get<std::uint64_t>();
  const auto target = b.get<std::uint32_t>();
  const auto count = b.get<std::uint32_t>();
  s.nodes_.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    Pair p = unpack_pair(b.get_bytes());
    const auto parent = b.get<std::uint32_t>();
    std::vector<Move> edge(b.get<std::uint32_t>());
    for (auto& m : edge) m = Move::parse(b.get_bytes());
    std::string key = pack_pair(p);
    s.key_bytes_ += key.size();
    if (!s.index_.emplace(std::move(key), k).second) throw CheckpointError("duplicate pair in checkpoint");
    ++s.classes_[p.total_length()];
    s.nodes_.push_back({std::move(p), parent, std::move(edge)});
  }
  s.target_ = target;
  s.frontier_.resize(b.get<std::uint32_t>());
  for (auto& id : s.frontier_) {
    id = b.get<std::uint32_t>();
    if (id >= count) throw CheckpointError("frontier entry out of range");
  }
  if (!b.done()) throw CheckpointError("trailing bytes in checkpoint");
  std::make_heap(s.frontier_.begin(), s.frontier_.end(), FrontierLess{&s.nodes_});
  return s;
}

SearchReport run_search(const SearchConfig& cfg) { return Search(cfg).run(); }

}  // namespace ac
