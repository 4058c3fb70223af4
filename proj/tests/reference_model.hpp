#pragma once

// Independent reference model: labels are std::string, adjacency follows the
// m1 | m2 | m3 rule literally, graph queries are naive. Shares no code with
// the library so disagreements point at one side or the other.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ref {

inline std::string flip(std::string s, std::size_t i) {
  s[i] = s[i] == '0' ? '1' : '0';
  return s;
}

inline std::string invert(std::string s) {
  for (auto& c : s) c = c == '0' ? '1' : '0';
  return s;
}

inline std::string swap_rule(const std::string& u, int k) {
  const std::size_t n = u.size();
  const std::size_t p = n >> k;
  const std::string m1 = u.substr(0, p);
  const std::string m2 = u.substr(p, p);
  const std::string m3 = u.substr(2 * p);
  return m1 == m2 ? invert(m1) + invert(m2) + m3 : m2 + m1 + m3;
}

inline int log2_exact(std::size_t n) {
  int d = 0;
  while ((std::size_t{1} << d) < n) ++d;
  return d;
}

/// Neighbors of u in DSC_n (folded = false) or FDSC_n (folded = true).
inline std::set<std::string> neighbors(const std::string& u, bool folded = true) {
  std::set<std::string> out{flip(u, 0)};
  const int d = log2_exact(u.size());
  for (int k = 1; k <= d; ++k) out.insert(swap_rule(u, k));
  if (folded) out.insert(flip(u, 1));
  return out;
}

inline std::string to_bits(unsigned long long v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if ((v >> (n - 1 - i)) & 1ULL) s[i] = '1';
  }
  return s;
}

inline std::vector<std::string> all_labels(std::size_t n) {
  std::vector<std::string> out;
  for (unsigned long long v = 0; v < (1ULL << n); ++v) out.push_back(to_bits(v, n));
  return out;
}

struct Model {
  std::vector<std::string> labels;
  std::map<std::string, std::set<std::string>> adj;

  explicit Model(int d, bool folded = true) {
    labels = all_labels(std::size_t{1} << d);
    for (const auto& u : labels) adj[u] = neighbors(u, folded);
  }

  std::size_t edge_count() const {
    std::size_t deg = 0;
    for (const auto& [u, nb] : adj) deg += nb.size();
    return deg / 2;
  }

  /// Number of components after deleting `removed`, and survivor count.
  std::pair<std::size_t, std::size_t> components(const std::set<std::string>& removed) const {
    std::set<std::string> seen;
    std::size_t comps = 0;
    std::size_t survivors = 0;
    for (const auto& s : labels) {
      if (removed.count(s) || seen.count(s)) continue;
      ++comps;
      std::vector<std::string> stack{s};
      seen.insert(s);
      while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        ++survivors;
        for (const auto& y : adj.at(x)) {
          if (!removed.count(y) && seen.insert(y).second) stack.push_back(y);
        }
      }
    }
    return {comps, survivors};
  }

  bool is_cut(const std::set<std::string>& removed) const {
    const auto [comps, survivors] = components(removed);
    return comps >= 2 || survivors <= 1;
  }

  /// Smallest removal set size that cuts, by brute force over subsets.
  int vertex_connectivity_brute() const {
    const std::size_t v = labels.size();
    for (std::size_t t = 0; t <= v; ++t) {
      std::vector<std::size_t> idx(t);
      for (std::size_t i = 0; i < t; ++i) idx[i] = i;
      while (true) {
        std::set<std::string> removed;
        for (auto i : idx) removed.insert(labels[i]);
        if (is_cut(removed)) return static_cast<int>(t);
        int i = static_cast<int>(t) - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == v - t + static_cast<std::size_t>(i)) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (auto j = static_cast<std::size_t>(i) + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return static_cast<int>(v);
  }

  /// Distinct vertex sets of stars K_{1,m} (structure) or K_{1,0..m}
  /// (substructure); m = 0 means single vertices.
  std::set<std::set<std::string>> star_vertex_sets(int m, bool substructure) const {
    std::set<std::set<std::string>> out;
    for (const auto& c : labels) {
      const std::vector<std::string> nb(adj.at(c).begin(), adj.at(c).end());
      const std::size_t deg = nb.size();
      for (unsigned mask = 0; mask < (1U << deg); ++mask) {
        const int leaves = __builtin_popcount(mask);
        if (substructure ? leaves > m : leaves != m) continue;
        std::set<std::string> vs{c};
        for (std::size_t i = 0; i < deg; ++i) {
          if (mask & (1U << i)) vs.insert(nb[i]);
        }
        out.insert(vs);
      }
    }
    return out;
  }

  /// Smallest number of star vertex sets whose union cuts, up to `budget`;
  /// -1 when none within budget.
  int structure_connectivity(int m, bool substructure, int budget) const {
    const auto sets = star_vertex_sets(m, substructure);
    const std::vector<std::set<std::string>> cands(sets.begin(), sets.end());
    for (int t = 1; t <= budget; ++t) {
      if (search(cands, static_cast<std::size_t>(t), 0, {})) return t;
    }
    return -1;
  }

 private:
  bool search(const std::vector<std::set<std::string>>& cands, std::size_t left, std::size_t from,
              const std::set<std::string>& removed) const {
    if (left == 0) return is_cut(removed);
    for (std::size_t i = from; i < cands.size(); ++i) {
      auto next = removed;
      next.insert(cands[i].begin(), cands[i].end());
      if (search(cands, left - 1, i + 1, next)) return true;
    }
    return false;
  }
};

}  // namespace ref
