#pragma once

// Brute-force ground truth: exact structure / substructure connectivity by
// exhaustive family search, the vertex-plus-edge removal sweep, and the
// super-connectivity probe.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "fdsc/cuts.hpp"
#include "fdsc/error.hpp"
#include "fdsc/graph.hpp"
#include "fdsc/label.hpp"

namespace fdsc {

/// Exact test "is G - S disconnected or trivial" for a connected base graph.
///
/// Every component of G - S contains a survivor adjacent to S, so G - S is
/// connected iff all such boundary vertices fall into one component. A
/// multi-source BFS grows from the boundary and unions sources whose regions
/// meet; it stops as soon as one set remains, and otherwise exhausts every
/// component. Cost is proportional to the region explored, not to |V|.
class DisconnectionProbe {
 public:
  explicit DisconnectionProbe(const Graph& g)
      : g_(&g), stamp_(g.vertex_count(), 0), owner_(g.vertex_count(), 0) {}

  /// `removed` lists distinct vertices; `is_removed[v]` is nonzero for them.
  bool is_cut(std::span<const Vertex> removed, std::span<const std::uint8_t> is_removed) {
    const std::size_t survivors = g_->vertex_count() - removed.size();
    if (survivors <= 1) return true;
    if (removed.empty()) return false;
    next_epoch();
    queue_.clear();
    uf_.clear();
    for (Vertex r : removed) {
      for (Vertex y : g_->neighbors(r)) {
        if (is_removed[y] || stamp_[y] == epoch_) continue;
        stamp_[y] = epoch_;
        owner_[y] = static_cast<std::uint32_t>(uf_.size());
        uf_.push_back(static_cast<std::uint32_t>(uf_.size()));
        queue_.push_back(y);
      }
    }
    std::size_t sets = uf_.size();
    if (sets <= 1) return false;
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const Vertex x = queue_[qi];
      for (Vertex y : g_->neighbors(x)) {
        if (is_removed[y]) continue;
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          owner_[y] = owner_[x];
          queue_.push_back(y);
        } else if (unite(owner_[x], owner_[y]) && --sets == 1) {
          return false;
        }
      }
    }
    return true;
  }

 private:
  void next_epoch() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }

  std::uint32_t find(std::uint32_t a) {
    while (uf_[a] != a) {
      uf_[a] = uf_[uf_[a]];
      a = uf_[a];
    }
    return a;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    uf_[std::max(a, b)] = std::min(a, b);
    return true;
  }

  const Graph* g_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> owner_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> queue_;
  std::vector<std::uint32_t> uf_;
};

/// Removal-set bookkeeping with multiplicities, so overlapping elements can
/// be pushed and popped in LIFO order.
class RemovalStack {
 public:
  explicit RemovalStack(std::size_t vertex_count) : count_(vertex_count, 0), flag_(vertex_count, 0) {}

  std::size_t push(std::span<const Vertex> vertices) {
    const std::size_t mark = list_.size();
    for (Vertex v : vertices) {
      if (count_[v]++ == 0) {
        flag_[v] = 1;
        list_.push_back(v);
      }
    }
    return mark;
  }

  void pop(std::span<const Vertex> vertices, std::size_t mark) {
    for (Vertex v : vertices) {
      if (--count_[v] == 0) flag_[v] = 0;
    }
    list_.resize(mark);
  }

  std::span<const Vertex> removed() const { return list_; }
  std::span<const std::uint8_t> flags() const { return flag_; }

 private:
  std::vector<std::uint16_t> count_;
  std::vector<std::uint8_t> flag_;
  std::vector<Vertex> list_;
};

/// Binomial coefficient, saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

/// 1-based position of a sorted index tuple among all t-subsets of [0, n)
/// in lexicographic order.
inline std::uint64_t lexicographic_position(std::span<const std::size_t> chosen, std::size_t n) {
  std::uint64_t before = 0;
  std::size_t lo = 0;
  const std::size_t t = chosen.size();
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t v = lo; v < chosen[i]; ++v) before += binomial(n - v - 1, t - i - 1);
    lo = chosen[i] + 1;
  }
  return before + 1;
}

/// Structure-mode candidates are all stars with exactly m leaves;
/// substructure-mode candidates all stars with 0..m leaves. Stars with the
/// same vertex set are kept once (first generated: smallest center). Output
/// is ordered by sorted vertex set.
struct CandidateSet {
  std::vector<Star> stars;
  /// Vertex sets, ascending, parallel to `stars`.
  std::vector<std::vector<Vertex>> vertex_sets;
  std::size_t raw_count = 0;
};

inline CandidateSet enumerate_candidate_set(const Graph& g, int m, FamilyMode mode) {
  if (m < 0) throw ParameterError("pattern order m must be >= 0");
  std::map<std::vector<Vertex>, Star> unique;
  CandidateSet out;
  std::vector<std::size_t> pick;
  for (Vertex c = 0; c < g.vertex_count(); ++c) {
    const auto nbrs = g.neighbors(c);
    const int lo = mode == FamilyMode::structure ? m : 0;
    for (int j = lo; j <= m && j <= static_cast<int>(nbrs.size()); ++j) {
      pick.resize(static_cast<std::size_t>(j));
      std::iota(pick.begin(), pick.end(), std::size_t{0});
      while (true) {
        Star star{Graph::label(c), {}};
        std::vector<Vertex> key{c};
        for (auto p : pick) {
          star.leaves.push_back(Graph::label(nbrs[p]));
          key.push_back(nbrs[p]);
        }
        std::sort(key.begin(), key.end());
        ++out.raw_count;
        unique.emplace(std::move(key), std::move(star));
        // next j-combination of neighbor positions
        int i = j - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == nbrs.size() - static_cast<std::size_t>(j - i)) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < j; ++k) pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
      }
    }
  }
  for (auto& [key, star] : unique) {
    out.vertex_sets.push_back(key);
    out.stars.push_back(std::move(star));
  }
  return out;
}

inline std::vector<Star> enumerate_candidates(const Graph& g, int m, FamilyMode mode) {
  return enumerate_candidate_set(g, m, mode).stars;
}

struct SearchOptions {
  unsigned threads = 1;
  /// Skip subsets whose vertex union is smaller than this (a set smaller than
  /// kappa(G) cannot disconnect). 0 disables the rule.
  std::size_t prune_below = 0;
  /// Stop at the lexicographically first hit instead of counting all hits.
  bool stop_at_first = true;
};

struct LevelScan {
  std::optional<std::vector<std::size_t>> first_hit;
  std::uint64_t hits = 0;
  /// Subsets visited (evaluated + pruned). Equals C(|candidates|, t) when
  /// the level was exhausted.
  std::uint64_t visited = 0;
  std::uint64_t pruned = 0;
};

namespace detail {

class LevelWorker {
 public:
  LevelWorker(const Graph& g, const std::vector<std::vector<Vertex>>& cands, std::size_t t,
              const SearchOptions& opts)
      : cands_(cands), t_(t), opts_(opts), probe_(g), stack_(g.vertex_count()), chosen_(t) {}

  /// Scans all t-subsets whose first element is `first`, in lexicographic
  /// order.
  void scan_block(std::size_t first) {
    block_hit_.reset();
    chosen_[0] = first;
    const auto mark = stack_.push(cands_[first]);
    descend(1, first + 1);
    stack_.pop(cands_[first], mark);
  }

  const std::optional<std::vector<std::size_t>>& block_hit() const { return block_hit_; }
  LevelScan& totals() { return totals_; }

 private:
  bool descend(std::size_t depth, std::size_t start) {
    if (depth == t_) return evaluate();
    const std::size_t c = cands_.size();
    for (std::size_t idx = start; idx + (t_ - depth) <= c; ++idx) {
      chosen_[depth] = idx;
      const auto mark = stack_.push(cands_[idx]);
      const bool stop = descend(depth + 1, idx + 1);
      stack_.pop(cands_[idx], mark);
      if (stop) return true;
    }
    return false;
  }

  bool evaluate() {
    ++totals_.visited;
    if (stack_.removed().size() < opts_.prune_below) {
      ++totals_.pruned;
      return false;
    }
    if (!probe_.is_cut(stack_.removed(), stack_.flags())) return false;
    ++totals_.hits;
    if (!block_hit_) block_hit_ = chosen_;
    return opts_.stop_at_first;
  }

  const std::vector<std::vector<Vertex>>& cands_;
  std::size_t t_;
  const SearchOptions& opts_;
  DisconnectionProbe probe_;
  RemovalStack stack_;
  std::vector<std::size_t> chosen_;
  std::optional<std::vector<std::size_t>> block_hit_;
  LevelScan totals_;
};

}  // namespace detail

/// Scans every t-subset of `cands` (vertex sets) for disconnecting unions.
/// Work is split by first index; the reported first hit is the
/// lexicographically smallest one whatever the thread count.
inline LevelScan scan_level(const Graph& g, const std::vector<std::vector<Vertex>>& cands, std::size_t t,
                            const SearchOptions& opts) {
  LevelScan out;
  if (t == 0 || t > cands.size()) return out;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best_first{cands.size()};
  std::mutex mu;
  std::map<std::size_t, std::vector<std::size_t>> hits_by_block;
  auto work = [&] {
    detail::LevelWorker worker(g, cands, t, opts);
    while (true) {
      const std::size_t first = next.fetch_add(1);
      if (first + t > cands.size()) break;
      if (opts.stop_at_first && first > best_first.load()) break;
      worker.scan_block(first);
      if (worker.block_hit()) {
        std::lock_guard lock(mu);
        hits_by_block.emplace(first, *worker.block_hit());
        if (first < best_first.load()) best_first.store(first);
      }
    }
    std::lock_guard lock(mu);
    out.visited += worker.totals().visited;
    out.pruned += worker.totals().pruned;
    out.hits += worker.totals().hits;
  };
  const unsigned threads = std::max(1U, opts.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  if (!hits_by_block.empty()) out.first_hit = hits_by_block.begin()->second;
  return out;
}

struct OracleOptions {
  unsigned threads = 1;
  /// Use kappa(G) (computed exactly) to skip subsets with a smaller union.
  bool prune_with_connectivity = true;
  /// Refuse a level whose subset count exceeds this (0 = unlimited). The
  /// result then reports the truncation and the bound proven so far.
  std::uint64_t subset_limit = 0;
};

struct OracleResult {
  int n = 0;
  int d = 0;
  int pattern_m = 0;
  FamilyMode mode = FamilyMode::structure;
  std::optional<int> value;
  int proven_lower_bound = 0;
  std::optional<FaultFamily> certificate;
  std::size_t candidate_count = 0;
  std::size_t raw_candidate_count = 0;
  /// Subsets accounted for per family size t = 1, 2, ... At the size where
  /// the certificate was found this is its lexicographic position.
  std::vector<std::uint64_t> examined_per_size;
  std::uint64_t pruned = 0;
  std::size_t prune_below = 0;
  bool truncated = false;
  std::string truncation_reason;
  double elapsed_ms = 0.0;

  std::uint64_t examined() const {
    return std::accumulate(examined_per_size.begin(), examined_per_size.end(), std::uint64_t{0});
  }
};

/// Smallest t <= size_budget such that some t candidates disconnect g.
inline OracleResult exact_structure_connectivity(const Graph& g, int m, FamilyMode mode, int size_budget,
                                                 const OracleOptions& opts = {}) {
  if (size_budget < 1) throw ParameterError("size budget must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  if (!is_connected(g)) throw ParameterError("exact search needs a connected base graph");
  OracleResult result;
  result.n = g.dim().n();
  result.d = g.dim().d();
  result.pattern_m = m;
  result.mode = mode;
  const CandidateSet cands = enumerate_candidate_set(g, m, mode);
  result.candidate_count = cands.stars.size();
  result.raw_candidate_count = cands.raw_count;
  SearchOptions search;
  search.threads = opts.threads;
  if (opts.prune_with_connectivity) search.prune_below = static_cast<std::size_t>(vertex_connectivity(g));
  result.prune_below = search.prune_below;

  result.proven_lower_bound = 1;
  for (int t = 1; t <= size_budget; ++t) {
    const auto total = binomial(cands.stars.size(), static_cast<std::uint64_t>(t));
    if (opts.subset_limit != 0 && total > opts.subset_limit) {
      result.truncated = true;
      result.truncation_reason = "size " + std::to_string(t) + " has " + std::to_string(total) +
                                 " subsets, above the limit of " + std::to_string(opts.subset_limit);
      break;
    }
    const LevelScan scan = scan_level(g, cands.vertex_sets, static_cast<std::size_t>(t), search);
    if (scan.first_hit) {
      result.examined_per_size.push_back(lexicographic_position(*scan.first_hit, cands.stars.size()));
      FaultFamily cert{{}, m, mode};
      for (auto idx : *scan.first_hit) cert.elements.push_back(cands.stars[idx]);
      result.certificate = std::move(cert);
      result.value = t;
      result.proven_lower_bound = t;
      break;
    }
    result.examined_per_size.push_back(scan.visited);
    result.pruned += scan.pruned;
    result.proven_lower_bound = t + 1;
  }
  result.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

enum class BudgetMode { exhaustive, sample };

inline std::string to_string(BudgetMode mode) { return mode == BudgetMode::exhaustive ? "exhaustive" : "sample"; }

/// A_1: removed vertices. A_2: removed edges (both endpoints go).
struct RemovalSpec {
  std::vector<VertexLabel> a1;
  std::vector<Edge> a2;
};

inline constexpr const char* kGeneratorName = "std::mt19937_64 (seed_seq{seed, block}, 4096 samples per block)";
inline constexpr std::uint64_t kSamplesPerBlock = 4096;

struct SweepReport {
  std::string name;
  BudgetMode mode = BudgetMode::exhaustive;
  int max_size = 0;
  std::uint64_t examined = 0;
  /// Removal sets smaller than kappa(G), accepted without a traversal.
  std::uint64_t skipped_below_kappa = 0;
  std::size_t kappa_used = 0;
  std::uint64_t violations = 0;
  std::optional<RemovalSpec> counterexample;
  std::uint64_t seed = 0;
  std::string generator;
  double elapsed_ms = 0.0;

  bool holds() const { return violations == 0; }
};

namespace detail {

inline std::vector<Edge> edge_list(const Graph& g) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v) edges.emplace_back(Graph::label(v), Graph::label(w));
    }
  }
  return edges;
}

/// Vertices within distance 2 of `anchor`, anchor included.
inline std::vector<Vertex> ball2(const Graph& g, Vertex anchor) {
  std::vector<Vertex> ball{anchor};
  for (Vertex x : g.neighbors(anchor)) {
    ball.push_back(x);
    for (Vertex y : g.neighbors(x)) ball.push_back(y);
  }
  std::sort(ball.begin(), ball.end());
  ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
  return ball;
}

/// Runs `body(sample_index, rng)` for every sample; sample i always draws
/// from the generator of block i / kSamplesPerBlock, so results do not
/// depend on the thread count.
template <class Body>
void for_each_sample(std::uint64_t count, std::uint64_t seed, unsigned threads, Body&& make_body) {
  const std::uint64_t blocks = (count + kSamplesPerBlock - 1) / kSamplesPerBlock;
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    auto body = make_body();
    while (true) {
      const std::uint64_t block = next.fetch_add(1);
      if (block >= blocks) break;
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
      std::mt19937_64 rng(seq);
      const std::uint64_t end = std::min(count, (block + 1) * kSamplesPerBlock);
      for (std::uint64_t i = block * kSamplesPerBlock; i < end; ++i) body(i, rng);
    }
    body.finish();
  };
  threads = std::max(1U, threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  }
}

template <class T>
std::vector<T> draw_distinct(const std::vector<T>& pool, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> idx;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  while (idx.size() < k && idx.size() < pool.size()) {
    const auto i = pick(rng);
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<T> out;
  for (auto i : idx) out.push_back(pool[i]);
  return out;
}

/// Accumulates violations; keeps the one with the smallest sample index.
struct ViolationSink {
  std::mutex mu;
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;
  std::uint64_t violations = 0;
  std::optional<std::pair<std::uint64_t, RemovalSpec>> first;

  void merge(std::uint64_t ex, std::uint64_t sk, std::uint64_t vio,
             std::optional<std::pair<std::uint64_t, RemovalSpec>> local) {
    std::lock_guard lock(mu);
    examined += ex;
    skipped += sk;
    violations += vio;
    if (local && (!first || local->first < first->first)) first = std::move(local);
  }
};

}  // namespace detail

struct SweepOptions {
  BudgetMode mode = BudgetMode::exhaustive;
  std::uint64_t sample_count = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Exhaustive requests above this many removal sets throw ResourceCapError.
  std::uint64_t exhaustive_limit = 500'000'000;
};

/// Removes A_1 and the endpoints of A_2 for every spec with
/// |A_1| + |A_2| <= d and records each spec that leaves the graph
/// disconnected (or with at most one vertex).
///
/// Exhaustive mode enumerates specs as t-subsets (t <= d) of the combined
/// pool "vertices, then edges"; removal sets smaller than kappa(G) are
/// accepted without traversal. Sample mode alternates uniform specs with
/// specs drawn near a random anchor (A_1 from its radius-2 ball, A_2 from
/// edges leaving that ball), always with |A_1| + |A_2| = d.
inline SweepReport a1a2_check(const Graph& g, const SweepOptions& opts) {
  const Dim dim = g.dim();
  if (g.variant() != Variant::fdsc || dim.d() < 3) {
    throw ParameterError("the A1/A2 removal check needs FDSC with d >= 3");
  }
  const auto start = std::chrono::steady_clock::now();
  const int d = dim.d();
  SweepReport report;
  report.name = "a1a2_removal";
  report.mode = opts.mode;
  report.max_size = d;
  report.seed = opts.seed;
  const auto edges = detail::edge_list(g);

  if (opts.mode == BudgetMode::exhaustive) {
    const std::size_t pool_size = g.vertex_count() + edges.size();
    std::uint64_t total = 0;
    for (int t = 0; t <= d; ++t) total += binomial(pool_size, static_cast<std::uint64_t>(t));
    if (total > opts.exhaustive_limit) {
      throw ResourceCapError("exhaustive A1/A2 sweep needs " + std::to_string(total) +
                             " removal specs, above the limit of " + std::to_string(opts.exhaustive_limit));
    }
    std::vector<std::vector<Vertex>> pool;
    for (Vertex v = 0; v < g.vertex_count(); ++v) pool.push_back({v});
    for (const auto& [a, b] : edges) {
      pool.push_back({static_cast<Vertex>(a.bits), static_cast<Vertex>(b.bits)});
    }
    SearchOptions search;
    search.threads = opts.threads;
    search.stop_at_first = false;
    search.prune_below = static_cast<std::size_t>(vertex_connectivity(g));
    report.kappa_used = search.prune_below;
    report.examined = 1;  // the empty spec; the base graph is connected
    std::optional<std::vector<std::size_t>> first;
    for (int t = 1; t <= d; ++t) {
      const auto scan = scan_level(g, pool, static_cast<std::size_t>(t), search);
      report.examined += scan.visited;
      report.skipped_below_kappa += scan.pruned;
      report.violations += scan.hits;
      if (!first && scan.first_hit) first = scan.first_hit;
    }
    if (first) {
      RemovalSpec spec;
      for (auto idx : *first) {
        if (idx < g.vertex_count()) {
          spec.a1.push_back(Graph::label(static_cast<Vertex>(idx)));
        } else {
          spec.a2.push_back(edges[idx - g.vertex_count()]);
        }
      }
      report.counterexample = std::move(spec);
    }
  } else {
    report.generator = kGeneratorName;
    detail::ViolationSink sink;
    detail::for_each_sample(opts.sample_count, opts.seed, opts.threads, [&] {
      struct Body {
        const Graph& g;
        const std::vector<Edge>& edges;
        int d;
        detail::ViolationSink& sink;
        DisconnectionProbe probe{g};
        RemovalStack stack{g.vertex_count()};
        std::uint64_t examined = 0;
        std::uint64_t violations = 0;
        std::optional<std::pair<std::uint64_t, RemovalSpec>> first{};

        void operator()(std::uint64_t i, std::mt19937_64& rng) {
          std::uniform_int_distribution<int> split(0, d);
          const int a = split(rng);
          const auto b = static_cast<std::size_t>(d - a);
          RemovalSpec spec;
          std::vector<Vertex> v1;
          std::vector<Edge> e2;
          if (i % 2 == 0) {
            std::uniform_int_distribution<std::size_t> pick_v(0, g.vertex_count() - 1);
            while (v1.size() < static_cast<std::size_t>(a)) {
              const auto v = static_cast<Vertex>(pick_v(rng));
              if (std::find(v1.begin(), v1.end(), v) == v1.end()) v1.push_back(v);
            }
            e2 = detail::draw_distinct(edges, b, rng);
          } else {
            std::uniform_int_distribution<std::size_t> pick_v(0, g.vertex_count() - 1);
            const auto ball = detail::ball2(g, static_cast<Vertex>(pick_v(rng)));
            v1 = detail::draw_distinct(ball, static_cast<std::size_t>(a), rng);
            std::vector<Edge> local;
            for (Vertex x : ball) {
              for (Vertex y : g.neighbors(x)) local.emplace_back(Graph::label(std::min(x, y)), Graph::label(std::max(x, y)));
            }
            std::sort(local.begin(), local.end());
            local.erase(std::unique(local.begin(), local.end()), local.end());
            e2 = detail::draw_distinct(local, b, rng);
          }
          std::vector<Vertex> all(v1.begin(), v1.end());
          for (const auto& [x, y] : e2) {
            all.push_back(static_cast<Vertex>(x.bits));
            all.push_back(static_cast<Vertex>(y.bits));
          }
          const auto mark = stack.push(all);
          ++examined;
          const bool cut = probe.is_cut(stack.removed(), stack.flags());
          stack.pop(all, mark);
          if (!cut) return;
          ++violations;
          if (!first || i < first->first) {
            for (Vertex v : v1) spec.a1.push_back(Graph::label(v));
            spec.a2 = e2;
            first = std::make_pair(i, std::move(spec));
          }
        }
        void finish() { sink.merge(examined, 0, violations, std::move(first)); }
      };
      return Body{g, edges, d, sink};
    });
    report.examined = sink.examined;
    report.violations = sink.violations;
    if (sink.first) report.counterexample = std::move(sink.first->second);
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace detail {

/// Disconnected with at least two survivors and no survivor whose whole
/// neighborhood was removed.
inline bool is_super_violation(const Graph& g, DisconnectionProbe& probe, const RemovalStack& stack) {
  const auto removed = stack.removed();
  if (g.vertex_count() - removed.size() <= 1) return false;
  if (!probe.is_cut(removed, stack.flags())) return false;
  const auto flags = stack.flags();
  for (Vertex r : removed) {
    for (Vertex y : g.neighbors(r)) {
      if (flags[y]) continue;
      bool isolated = true;
      for (Vertex z : g.neighbors(y)) {
        if (!flags[z]) {
          isolated = false;
          break;
        }
      }
      if (isolated) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Every removal of at most 2d - 1 vertices leaves g connected or isolates a
/// vertex. Exhaustive mode walks all sizes 1..2d-1; sample mode draws sets
/// of size exactly 2d - 1, alternating uniform sets with sets drawn from the
/// radius-2 ball of a random anchor.
inline SweepReport super_cut_probe(const Graph& g, const SweepOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const int size = 2 * g.dim().d() - 1;
  SweepReport report;
  report.name = "super_connectivity";
  report.mode = opts.mode;
  report.max_size = size;
  report.seed = opts.seed;
  if (!is_connected(g)) throw ParameterError("super connectivity probe needs a connected graph");

  if (opts.mode == BudgetMode::exhaustive) {
    std::uint64_t total = 0;
    for (int t = 1; t <= size; ++t) total += binomial(g.vertex_count(), static_cast<std::uint64_t>(t));
    if (total > opts.exhaustive_limit) {
      throw ResourceCapError("exhaustive super-connectivity probe needs " + std::to_string(total) +
                             " removal sets, above the limit of " + std::to_string(opts.exhaustive_limit));
    }
    DisconnectionProbe probe(g);
    RemovalStack stack(g.vertex_count());
    std::vector<Vertex> chosen;
    std::vector<std::size_t> marks;
    // Depth-first walk over all subsets of size 1..size in lexicographic order.
    auto visit = [&](auto&& self, Vertex from) -> void {
      for (Vertex v = from; v < g.vertex_count(); ++v) {
        const Vertex one[1] = {v};
        const auto mark = stack.push(one);
        chosen.push_back(v);
        ++report.examined;
        if (detail::is_super_violation(g, probe, stack)) {
          if (report.violations++ == 0) {
            RemovalSpec spec;
            for (Vertex c : chosen) spec.a1.push_back(Graph::label(c));
            report.counterexample = std::move(spec);
          }
        }
        if (static_cast<int>(chosen.size()) < size) self(self, v + 1);
        chosen.pop_back();
        stack.pop(one, mark);
      }
    };
    visit(visit, 0);
  } else {
    report.generator = kGeneratorName;
    detail::ViolationSink sink;
    detail::for_each_sample(opts.sample_count, opts.seed, opts.threads, [&] {
      struct Body {
        const Graph& g;
        int size;
        detail::ViolationSink& sink;
        DisconnectionProbe probe{g};
        RemovalStack stack{g.vertex_count()};
        std::uint64_t examined = 0;
        std::uint64_t violations = 0;
        std::optional<std::pair<std::uint64_t, RemovalSpec>> first{};

        void operator()(std::uint64_t i, std::mt19937_64& rng) {
          std::uniform_int_distribution<std::size_t> pick_v(0, g.vertex_count() - 1);
          std::vector<Vertex> set;
          if (i % 2 == 0) {
            const auto k = std::min<std::size_t>(static_cast<std::size_t>(size), g.vertex_count());
            while (set.size() < k) {
              const auto v = static_cast<Vertex>(pick_v(rng));
              if (std::find(set.begin(), set.end(), v) == set.end()) set.push_back(v);
            }
          } else {
            const auto ball = detail::ball2(g, static_cast<Vertex>(pick_v(rng)));
            set = detail::draw_distinct(ball, static_cast<std::size_t>(size), rng);
          }
          const auto mark = stack.push(set);
          ++examined;
          const bool bad = detail::is_super_violation(g, probe, stack);
          stack.pop(set, mark);
          if (!bad) return;
          ++violations;
          if (!first || i < first->first) {
            RemovalSpec spec;
            std::sort(set.begin(), set.end());
            for (Vertex v : set) spec.a1.push_back(Graph::label(v));
            first = std::make_pair(i, std::move(spec));
          }
        }
        void finish() { sink.merge(examined, 0, violations, std::move(first)); }
      };
      return Body{g, size, sink};
    });
    report.examined = sink.examined;
    report.violations = sink.violations;
    if (sink.first) report.counterexample = std::move(sink.first->second);
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace fdsc
