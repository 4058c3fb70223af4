#pragma once

// Star-shaped fault structures and the explicit cut families for FDSC_n:
// the neighborhood cut (K_1), the edge cut isolating a vertex with d + 1
// K_{1,1} elements, and the floor(d/2) + 1 element K_{1,m} construction.
// Family validity is checked at label level, so constructions can be
// exercised far beyond the materialization cap.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fdsc/error.hpp"
#include "fdsc/graph.hpp"
#include "fdsc/label.hpp"

namespace fdsc {

/// A star: center plus leaves (possibly none). Leaves keep construction
/// order; validity treats them as a set.
struct Star {
  VertexLabel center;
  std::vector<VertexLabel> leaves;

  std::vector<VertexLabel> vertices() const {
    std::vector<VertexLabel> out{center};
    out.insert(out.end(), leaves.begin(), leaves.end());
    return out;
  }

  friend bool operator==(const Star&, const Star&) = default;
};

enum class FamilyMode { structure, substructure };

inline std::string to_string(FamilyMode mode) {
  return mode == FamilyMode::structure ? "structure" : "substructure";
}

inline FamilyMode parse_family_mode(const std::string& text) {
  if (text == "structure") return FamilyMode::structure;
  if (text == "substructure") return FamilyMode::substructure;
  throw ParseError("mode must be \"structure\" or \"substructure\" (got \"" + text + "\")");
}

/// Pattern order m = 0 encodes K_1, m >= 1 encodes K_{1,m}.
struct FaultFamily {
  std::vector<Star> elements;
  int pattern_m = 0;
  FamilyMode mode = FamilyMode::structure;

  std::size_t size() const noexcept { return elements.size(); }

  /// Union of element vertex sets, ascending.
  std::vector<VertexLabel> removed_vertices() const {
    std::set<VertexLabel> all;
    for (const auto& star : elements) {
      all.insert(star.center);
      all.insert(star.leaves.begin(), star.leaves.end());
    }
    return {all.begin(), all.end()};
  }
};

inline FaultFamily k1_cut(VertexLabel u, Dim dim) {
  FaultFamily fam{{}, 0, FamilyMode::structure};
  for (const auto& nb : neighbor_set(u, dim)) fam.elements.push_back({nb.label, {}});
  return fam;
}

/// d + 1 single-edge elements covering N(u): {u_1, (u_1)_{d+1}} and
/// {u_j, (u_j)_1} for j = 2..d+1. The j = d element is {u_d, u_f} because
/// the d-swap and the e1 flip together flip exactly s_2.
inline FaultFamily k11_cut(VertexLabel u, Dim dim) {
  if (dim.d() < 2) {
    throw ParameterError("the K_{1,1} cut construction needs d >= 2; use the oracle for d = 1");
  }
  require_valid(u, dim);
  FaultFamily fam{{}, 1, FamilyMode::structure};
  const VertexLabel u1 = indexed_neighbor(u, 1, dim);
  fam.elements.push_back({u1, {external_neighbor(u1, dim)}});
  for (int j = 2; j <= dim.d() + 1; ++j) {
    const VertexLabel uj = indexed_neighbor(u, j, dim);
    fam.elements.push_back({uj, {e1_neighbor(uj, dim)}});
  }
  return fam;
}

/// True when, at every level of recursive halving, the two halves of `b` are
/// equal or complementary. These are exactly the module addresses for which
/// the K_{1,m} construction produces adjacent leaves and covers N(u).
inline bool is_recursively_balanced(ModuleAddress b, Dim dim) {
  Word bits = b.bits;
  for (int width = dim.half(); width > 1; width /= 2) {
    const int h = width / 2;
    const Word hi = bits >> h;
    const Word lo = bits & low_mask(h);
    if (lo != hi && lo != (~hi & low_mask(h))) return false;
    bits = hi;
  }
  return true;
}

struct K1mCut {
  FaultFamily family;
  /// complement(B1).B1, isolated by the family.
  VertexLabel isolated;
};

namespace detail {

/// K_{1,m} star: the named leaves plus m - 2 fillers taken from the center's
/// remaining neighbors, smallest label first, never the center's f-neighbor.
inline Star star_with_fillers(VertexLabel center, std::vector<VertexLabel> named, int m, Dim dim) {
  std::vector<VertexLabel> pool;
  const VertexLabel cf = f_neighbor(center, dim);
  for (const auto& nb : neighbor_set(center, dim)) {
    if (nb.label == cf) continue;
    if (std::find(named.begin(), named.end(), nb.label) != named.end()) continue;
    pool.push_back(nb.label);
  }
  std::sort(pool.begin(), pool.end());
  const auto fillers = static_cast<std::size_t>(m - 2);
  if (pool.size() < fillers) throw std::logic_error("not enough filler leaves for K_{1,m} star");
  named.insert(named.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(fillers));
  return {center, std::move(named)};
}

}  // namespace detail

/// floor(d/2) + 1 K_{1,m} stars whose union covers N(u) for
/// u = complement(B1).B1.
///
/// Odd d: a star at (u_2)_{d+1} over {u_2, u_{d+1}}, stars at (u_j)_{j-1}
/// over {u_j, u_{j-1}} for even j in [4, d-1], and a star at u_f over
/// {u_1, u_d}. Even d: stars at (u_j)_{j-1} over {u_j, u_{j-1}} for odd j in
/// [3, d-1], a star at (u_{d+1})_1 over {u_{d+1}, ((u_{d+1})_1)_d}, and the
/// u_f star.
inline K1mCut k1m_cut(Dim dim, int m, ModuleAddress b1) {
  const int d = dim.d();
  if (dim.n() < 4) throw ParameterError("the K_{1,m} cut construction needs n >= 4 (d >= 2)");
  if (m < 2 || m > d + 1) {
    throw ParameterError("pattern order m must satisfy 2 <= m <= d + 1 = " + std::to_string(d + 1) +
                         " (got m = " + std::to_string(m) + ")");
  }
  require_valid(b1, dim);
  if (!is_recursively_balanced(b1, dim)) {
    throw ParameterError("module address " + format_module_address(b1, dim) +
                         " is not recursively balanced: at every halving level its two halves "
                         "must be equal or complementary (e.g. the all-zero address)");
  }
  const VertexLabel u = concat(complement(b1, dim).bits, b1, dim);
  auto nb = [&](VertexLabel x, int j) { return indexed_neighbor(x, j, dim); };
  const VertexLabel uf = f_neighbor(u, dim);

  FaultFamily fam{{}, m, FamilyMode::structure};
  if (d % 2 == 1) {
    fam.elements.push_back(
        detail::star_with_fillers(nb(nb(u, 2), d + 1), {nb(u, 2), nb(u, d + 1)}, m, dim));
    for (int j = 4; j <= d - 1; j += 2) {
      fam.elements.push_back(
          detail::star_with_fillers(nb(nb(u, j), j - 1), {nb(u, j), nb(u, j - 1)}, m, dim));
    }
  } else {
    for (int j = 3; j <= d - 1; j += 2) {
      fam.elements.push_back(
          detail::star_with_fillers(nb(nb(u, j), j - 1), {nb(u, j), nb(u, j - 1)}, m, dim));
    }
    const VertexLabel c = nb(nb(u, d + 1), 1);
    fam.elements.push_back(detail::star_with_fillers(c, {nb(u, d + 1), nb(c, d)}, m, dim));
  }
  fam.elements.push_back(detail::star_with_fillers(uf, {nb(u, 1), nb(u, d)}, m, dim));
  return {std::move(fam), u};
}

struct FamilyValidation {
  bool valid = true;
  /// Index of the first offending element, when the violation is local to one.
  std::optional<std::size_t> element;
  std::string violation;
};

/// Checks star invariants (leaves adjacent to the center, distinct, not the
/// center) and the mode/pattern leaf-count rule, using label adjacency only.
inline FamilyValidation validate_family(const FaultFamily& fam, Dim dim) {
  auto fail = [](std::optional<std::size_t> idx, std::string why) {
    return FamilyValidation{false, idx, std::move(why)};
  };
  if (fam.pattern_m < 0) return fail(std::nullopt, "pattern order m must be >= 0");
  for (std::size_t i = 0; i < fam.elements.size(); ++i) {
    const Star& star = fam.elements[i];
    const auto where = "element " + std::to_string(i) + ": ";
    if ((star.center.bits & ~dim.mask()) != 0) return fail(i, where + "center does not fit in n bits");
    const auto leaf_count = static_cast<int>(star.leaves.size());
    if (fam.mode == FamilyMode::structure && leaf_count != fam.pattern_m) {
      return fail(i, where + "structure mode needs exactly " + std::to_string(fam.pattern_m) +
                         " leaves, found " + std::to_string(leaf_count));
    }
    if (fam.mode == FamilyMode::substructure && leaf_count > fam.pattern_m) {
      return fail(i, where + "substructure mode allows at most " + std::to_string(fam.pattern_m) +
                         " leaves, found " + std::to_string(leaf_count));
    }
    const auto center_text = format_label(star.center, dim);
    for (std::size_t a = 0; a < star.leaves.size(); ++a) {
      const VertexLabel leaf = star.leaves[a];
      if ((leaf.bits & ~dim.mask()) != 0) return fail(i, where + "leaf does not fit in n bits");
      const auto leaf_text = format_label(leaf, dim);
      if (leaf == star.center) return fail(i, where + "leaf " + leaf_text + " equals the center");
      for (std::size_t b = 0; b < a; ++b) {
        if (star.leaves[b] == leaf) return fail(i, where + "leaf " + leaf_text + " repeated");
      }
      if (!adjacent(star.center, leaf, dim)) {
        return fail(i, where + "leaf " + leaf_text + " is not adjacent to center " + center_text);
      }
    }
  }
  return {};
}

struct CutReport {
  FaultFamily family;
  std::size_t removed_vertex_count = 0;
  ComponentCensus census;
  bool is_cut = false;
  std::optional<VertexLabel> isolated_target;
};

/// Removes the union of element vertex sets and classifies the survivor graph.
inline CutReport apply_cut(const Graph& g, const FaultFamily& fam) {
  const auto removed = fam.removed_vertices();
  CutReport report;
  report.family = fam;
  report.removed_vertex_count = removed.size();
  report.census = components_after_removal(g, removed);
  report.is_cut = report.census.disconnected_or_trivial();
  if (!report.census.component_sizes.empty() && report.census.component_sizes.back() == 1) {
    report.isolated_target = report.census.smallest_component_members.front();
  }
  return report;
}

/// Connectivity values for FDSC_n that are proven: K_1 (m = 0),
/// K_{1,1} and K_{1,m}; nullopt where no value is claimed.
inline std::optional<int> known_connectivity(int d, int m, FamilyMode mode) {
  if (m == 0) return d + 2;
  if (m == 1) return d >= 3 ? d + 1 : 2;
  if (m >= 2 && m <= d + 1) return d / 2 + 1;
  if (m == d + 2 && mode == FamilyMode::substructure) return d / 2 + 1;
  return std::nullopt;
}

}  // namespace fdsc
