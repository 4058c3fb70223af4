#pragma once

// Materialized DSC_n / FDSC_n graphs and the generic queries run on them:
// component census after vertex removal, exact vertex connectivity, girth.
//
// Vertex index == label value. The generic algorithms accept anything that
// models AdjacencyGraph, which keeps them testable on hand-built graphs.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fdsc/error.hpp"
#include "fdsc/label.hpp"

namespace fdsc {

using Vertex = std::uint32_t;

/// Largest n that build_graph materializes (2^16 vertices).
inline constexpr int kMaxMaterializedBits = 16;

template <class G>
concept AdjacencyGraph = requires(const G& g, Vertex v) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.neighbors(v) } -> std::convertible_to<std::span<const Vertex>>;
};

/// Plain undirected graph used for hand-built inputs.
class AdjacencyList {
 public:
  explicit AdjacencyList(std::size_t vertex_count) : adjacency_(vertex_count) {}

  void add_edge(Vertex u, Vertex v) {
    adjacency_.at(u).push_back(v);
    adjacency_.at(v).push_back(u);
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Immutable adjacency of one topology. Every vertex has the same degree, so
/// neighbor lists are stored flat with a fixed stride, each sorted ascending.
class Graph {
 public:
  Graph(Dim dim, Variant variant, std::size_t degree, std::vector<Vertex> adjacency)
      : dim_(dim), variant_(variant), degree_(degree), adjacency_(std::move(adjacency)) {}

  Dim dim() const noexcept { return dim_; }
  Variant variant() const noexcept { return variant_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t vertex_count() const noexcept { return adjacency_.size() / degree_; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + static_cast<std::size_t>(v) * degree_, degree_};
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  Vertex index(VertexLabel u) const {
    require_valid(u, dim_);
    return static_cast<Vertex>(u.bits);
  }

  static VertexLabel label(Vertex v) { return {v}; }

 private:
  Dim dim_;
  Variant variant_;
  std::size_t degree_;
  std::vector<Vertex> adjacency_;
};

inline Graph build_graph(Dim dim, Variant variant = Variant::fdsc) {
  if (dim.n() > kMaxMaterializedBits) {
    throw ResourceCapError("cannot materialize n = " + std::to_string(dim.n()) +
                           ": graph-backed operations are capped at n <= " +
                           std::to_string(kMaxMaterializedBits) + " (65,536 vertices)");
  }
  const std::size_t count = dim.vertex_count();
  const std::size_t degree = static_cast<std::size_t>(dim.d()) + (variant == Variant::fdsc ? 2 : 1);
  std::vector<Vertex> adjacency;
  adjacency.reserve(count * degree);
  for (std::size_t v = 0; v < count; ++v) {
    const auto first = adjacency.size();
    for (const auto& nb : neighbor_set(VertexLabel{v}, dim, variant)) {
      adjacency.push_back(static_cast<Vertex>(nb.label.bits));
    }
    std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(first), adjacency.end());
  }
  return Graph(dim, variant, degree, std::move(adjacency));
}

struct ComponentCensus {
  std::size_t component_count = 0;
  /// Descending.
  std::vector<std::size_t> component_sizes;
  /// Members of the smallest component (first found on ties), ascending, capped.
  std::vector<VertexLabel> smallest_component_members;

  std::size_t surviving_count() const {
    std::size_t total = 0;
    for (auto s : component_sizes) total += s;
    return total;
  }

  /// Structure-cut predicate: the survivor graph is disconnected or has at
  /// most one vertex.
  bool disconnected_or_trivial() const { return component_count >= 2 || surviving_count() <= 1; }
};

inline constexpr std::size_t kDefaultMemberCap = 16;

/// Census of the subgraph induced by vertices with removed[v] == 0. Fresh
/// traversal on every call.
template <AdjacencyGraph G>
ComponentCensus component_census(const G& g, const std::vector<char>& removed,
                                 std::size_t member_cap = kDefaultMemberCap) {
  const std::size_t count = g.vertex_count();
  std::vector<char> seen(removed.begin(), removed.end());
  seen.resize(count, 0);
  std::vector<Vertex> stack;
  std::vector<Vertex> members;
  ComponentCensus census;
  std::size_t smallest = std::numeric_limits<std::size_t>::max();
  for (Vertex start = 0; start < count; ++start) {
    if (seen[start]) continue;
    seen[start] = 1;
    stack.assign(1, start);
    members.clear();
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      members.push_back(x);
      for (Vertex y : g.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    ++census.component_count;
    census.component_sizes.push_back(members.size());
    if (members.size() < smallest) {
      smallest = members.size();
      std::sort(members.begin(), members.end());
      census.smallest_component_members.clear();
      for (std::size_t i = 0; i < members.size() && i < member_cap; ++i) {
        census.smallest_component_members.push_back(VertexLabel{members[i]});
      }
    }
  }
  std::sort(census.component_sizes.begin(), census.component_sizes.end(), std::greater<>());
  return census;
}

inline ComponentCensus components_after_removal(const Graph& g, std::span<const VertexLabel> removed,
                                                std::size_t member_cap = kDefaultMemberCap) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (auto u : removed) mask[g.index(u)] = 1;
  return component_census(g, mask, member_cap);
}

template <AdjacencyGraph G>
bool is_connected(const G& g) {
  return component_census(g, std::vector<char>(g.vertex_count(), 0), 0).component_count <= 1;
}

namespace detail {

/// Unit vertex-capacity flow network on the split graph: vertex v becomes
/// in(v) = 2v and out(v) = 2v + 1 joined by a capacity-1 arc.
class SplitFlowNetwork {
 public:
  template <AdjacencyGraph G>
  explicit SplitFlowNetwork(const G& g) : nodes_(2 * g.vertex_count()), head_(nodes_, -1) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) add_arc(2 * v, 2 * v + 1, 1);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      for (Vertex w : g.neighbors(v)) add_arc(2 * v + 1, 2 * w, 1);
    }
    parent_arc_.resize(nodes_);
    queue_.reserve(nodes_);
  }

  /// Number of internally vertex-disjoint s-t paths, stopping once `limit`
  /// is reached. s and t must be distinct and non-adjacent.
  int local_connectivity(Vertex s, Vertex t, int limit) {
    for (auto& a : arcs_) a.flow = 0;
    const std::size_t source = 2 * static_cast<std::size_t>(s) + 1;
    const std::size_t sink = 2 * static_cast<std::size_t>(t);
    int flow = 0;
    while (flow < limit && augment(source, sink)) ++flow;
    return flow;
  }

 private:
  struct Arc {
    std::size_t to;
    int capacity;
    int flow;
    int next;
  };

  void add_arc(std::size_t from, std::size_t to, int capacity) {
    arcs_.push_back({to, capacity, 0, head_[from]});
    head_[from] = static_cast<int>(arcs_.size() - 1);
    arcs_.push_back({from, 0, 0, head_[to]});
    head_[to] = static_cast<int>(arcs_.size() - 1);
  }

  bool augment(std::size_t source, std::size_t sink) {
    std::fill(parent_arc_.begin(), parent_arc_.end(), -2);
    parent_arc_[source] = -1;
    queue_.assign(1, source);
    for (std::size_t qi = 0; qi < queue_.size() && parent_arc_[sink] == -2; ++qi) {
      const std::size_t x = queue_[qi];
      for (int a = head_[x]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.capacity - arc.flow > 0 && parent_arc_[arc.to] == -2) {
          parent_arc_[arc.to] = a;
          queue_.push_back(arc.to);
        }
      }
    }
    if (parent_arc_[sink] == -2) return false;
    for (std::size_t x = sink; x != source;) {
      const auto a = static_cast<std::size_t>(parent_arc_[x]);
      arcs_[a].flow += 1;
      arcs_[a ^ 1U].flow -= 1;
      x = arcs_[a ^ 1U].to;
    }
    return true;
  }

  std::size_t nodes_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> parent_arc_;
  std::vector<std::size_t> queue_;
};

template <AdjacencyGraph G>
bool neighbors_contain(const G& g, Vertex u, Vertex v) {
  const auto nbrs = g.neighbors(u);
  return std::find(nbrs.begin(), nbrs.end(), v) != nbrs.end();
}

}  // namespace detail

/// Exact minimum vertex-cut size (0 for disconnected input, |V| - 1 for
/// complete graphs).
///
/// Fix a minimum-degree vertex x. A minimum cut S either avoids x, in which
/// case it separates x from some non-neighbor y, or contains x; a minimal
/// separator containing x leaves x with neighbors on both sides, so it also
/// separates two non-adjacent neighbors of x. Taking the minimum local
/// connectivity over both pair families is therefore exact.
template <AdjacencyGraph G>
int vertex_connectivity(const G& g) {
  const std::size_t count = g.vertex_count();
  if (count <= 1 || !is_connected(g)) return 0;
  Vertex x = 0;
  for (Vertex v = 1; v < count; ++v) {
    if (g.neighbors(v).size() < g.neighbors(x).size()) x = v;
  }
  int best = static_cast<int>(g.neighbors(x).size());
  detail::SplitFlowNetwork network(g);
  std::vector<char> closed(count, 0);
  closed[x] = 1;
  for (Vertex y : g.neighbors(x)) closed[y] = 1;
  for (Vertex y = 0; y < count && best > 0; ++y) {
    if (!closed[y]) best = std::min(best, network.local_connectivity(x, y, best));
  }
  const auto nbrs = g.neighbors(x);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (!detail::neighbors_contain(g, nbrs[i], nbrs[j])) {
        best = std::min(best, network.local_connectivity(nbrs[i], nbrs[j], best));
      }
    }
  }
  return best;
}

struct GirthResult {
  /// nullopt for acyclic input.
  std::optional<int> length;
  /// One shortest cycle, in cycle order.
  std::vector<VertexLabel> witness;
};

template <AdjacencyGraph G>
GirthResult girth(const G& g) {
  const std::size_t count = g.vertex_count();
  // Triangles first: the common case here, and the minimum possible.
  for (Vertex u = 0; u < count; ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v <= u) continue;
      for (Vertex w : g.neighbors(u)) {
        if (w > v && detail::neighbors_contain(g, v, w)) {
          return {3, {VertexLabel{u}, VertexLabel{v}, VertexLabel{w}}};
        }
      }
    }
  }
  // BFS from every root; a non-tree edge (x, y) closes a walk of length
  // dist(x) + dist(y) + 1. The global minimum of these is the girth and its
  // walk is a simple cycle (otherwise it would contain a shorter one).
  GirthResult best;
  std::vector<int> dist(count);
  std::vector<Vertex> parent(count);
  std::vector<Vertex> queue;
  for (Vertex root = 0; root < count; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent[root] = root;
    queue.assign(1, root);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex x = queue[qi];
      if (best.length && 2 * dist[x] + 1 >= *best.length) break;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          const int len = dist[x] + dist[y] + 1;
          if (!best.length || len < *best.length) {
            best.length = len;
            std::vector<VertexLabel> left;
            std::vector<VertexLabel> right;
            for (Vertex a = x; a != root; a = parent[a]) left.push_back(VertexLabel{a});
            for (Vertex b = y; b != root; b = parent[b]) right.push_back(VertexLabel{b});
            best.witness.assign(1, VertexLabel{root});
            best.witness.insert(best.witness.end(), left.rbegin(), left.rend());
            best.witness.insert(best.witness.end(), right.begin(), right.end());
          }
        }
      }
    }
  }
  return best;
}

struct QuotientCensus {
  std::size_t module_count = 0;
  std::size_t pairs_present = 0;
  std::size_t pairs_expected = 0;
  int min_multiplicity = 0;
  int max_multiplicity = 0;
  /// Multiplicity is 2 exactly for complementary address pairs.
  bool complementary_rule_holds = false;

  bool complete() const { return pairs_present == pairs_expected; }
};

/// Contract every module to a super vertex and count cross edges per
/// unordered module pair.
inline QuotientCensus quotient_census(const Graph& g) {
  const Dim dim = g.dim();
  if (g.variant() != Variant::fdsc || dim.n() < 4) {
    throw ParameterError("quotient census needs an FDSC graph with n >= 4");
  }
  const std::size_t modules = std::size_t{1} << dim.half();
  std::vector<std::uint8_t> multiplicity(modules * modules, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto bv = module_address(Graph::label(v), dim).bits;
    for (Vertex w : g.neighbors(v)) {
      if (w <= v) continue;
      const auto bw = module_address(Graph::label(w), dim).bits;
      if (bv == bw) continue;
      const auto lo = std::min(bv, bw);
      const auto hi = std::max(bv, bw);
      ++multiplicity[lo * modules + hi];
    }
  }
  QuotientCensus census;
  census.module_count = modules;
  census.pairs_expected = modules * (modules - 1) / 2;
  census.min_multiplicity = std::numeric_limits<int>::max();
  census.complementary_rule_holds = true;
  for (std::size_t a = 0; a < modules; ++a) {
    for (std::size_t b = a + 1; b < modules; ++b) {
      const int m = multiplicity[a * modules + b];
      if (m > 0) ++census.pairs_present;
      census.min_multiplicity = std::min(census.min_multiplicity, m);
      census.max_multiplicity = std::max(census.max_multiplicity, m);
      const bool complementary = (a ^ b) == dim.half_mask();
      if ((m == 2) != complementary) census.complementary_rule_holds = false;
    }
  }
  return census;
}

using Edge = std::pair<VertexLabel, VertexLabel>;

/// Cross edges between modules bi and bj, derived from addresses alone.
inline std::vector<Edge> cross_edges(ModuleAddress bi, ModuleAddress bj, Dim dim) {
  require_valid(bi, dim);
  require_valid(bj, dim);
  if (bi == bj) throw ParameterError("cross_edges needs two distinct module addresses");
  std::vector<Edge> out;
  if (bj == complement(bi, dim)) out.emplace_back(concat(bi.bits, bi, dim), concat(bj.bits, bj, dim));
  out.emplace_back(concat(bj.bits, bi, dim), concat(bi.bits, bj, dim));
  for (const auto& [a, b] : out) {
    if (edge_kind(a, b, dim) != NeighborKind::external()) {
      throw std::logic_error("derived cross edge is not an external edge");
    }
  }
  return out;
}

enum class ExportFormat { edges, dot };

/// Edge list: header line, then one "<label> <label>" line per edge with the
/// smaller label first, sorted ascending.
inline void write_edges(std::ostream& out, const Graph& g) {
  const Dim dim = g.dim();
  out << "# fdsc d=" << dim.d() << " n=" << dim.n() << " variant=" << to_string(g.variant()) << '\n';
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v) out << format_label(Graph::label(v), dim) << ' ' << format_label(Graph::label(w), dim) << '\n';
    }
  }
}

inline void write_dot(std::ostream& out, const Graph& g) {
  const Dim dim = g.dim();
  out << "graph " << to_string(g.variant()) << "_n" << dim.n() << " {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << "  \"" << format_label(Graph::label(v), dim) << "\";\n";
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v) {
        out << "  \"" << format_label(Graph::label(v), dim) << "\" -- \""
            << format_label(Graph::label(w), dim) << "\";\n";
      }
    }
  }
  out << "}\n";
}

inline void export_graph(std::ostream& out, const Graph& g, ExportFormat format) {
  if (format == ExportFormat::edges) {
    write_edges(out, g);
  } else {
    write_dot(out, g);
  }
  if (!out) throw std::runtime_error("failed to write graph export");
}

}  // namespace fdsc
