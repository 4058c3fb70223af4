#pragma once

// Label arithmetic for the divide-and-swap cube DSC_n and the folded
// divide-and-swap cube FDSC_n (n = 2^d).
//
// Bit convention: label character s_1 is the most significant bit of the
// n-bit field and s_n the least significant one. With that convention the
// prefix blocks m1 | m2 | m3 used by the swap rule are contiguous slices read
// from the top of the word.
//
// Nothing in this header materializes a graph; every function is a pure
// function of its arguments and works for any n <= 64.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "fdsc/error.hpp"

namespace fdsc {

using Word = std::uint64_t;

inline constexpr int kMaxLabelBits = 64;
inline constexpr int kMaxExponent = 6;
inline constexpr std::size_t kMaxDegree = kMaxExponent + 2;

enum class Variant { fdsc, dsc };

inline std::string to_string(Variant v) { return v == Variant::fdsc ? "fdsc" : "dsc"; }

constexpr Word low_mask(int width) {
  return width <= 0 ? Word{0} : width >= 64 ? ~Word{0} : (Word{1} << width) - 1;
}

/// Dimension parameters: exponent d and label width n = 2^d.
class Dim {
 public:
  explicit Dim(int d) : d_(d), n_(0) {
    if (d < 1 || d > kMaxExponent) {
      throw ParameterError("d must satisfy 1 <= d <= " + std::to_string(kMaxExponent) +
                           " so that n = 2^d <= " + std::to_string(kMaxLabelBits) +
                           " (got d = " + std::to_string(d) + ")");
    }
    n_ = 1 << d;
  }

  int d() const noexcept { return d_; }
  int n() const noexcept { return n_; }
  /// Width of a module address (n/2 bits).
  int half() const noexcept { return n_ / 2; }
  Word mask() const noexcept { return low_mask(n_); }
  Word half_mask() const noexcept { return low_mask(n_ / 2); }
  /// Number of vertices, 2^n. Only meaningful for n < 64.
  Word vertex_count() const noexcept { return n_ >= 64 ? 0 : Word{1} << n_; }

  friend bool operator==(Dim, Dim) = default;

 private:
  int d_;
  int n_;
};

inline Dim make_dim(int d) { return Dim(d); }

struct VertexLabel {
  Word bits = 0;

  friend constexpr auto operator<=>(VertexLabel, VertexLabel) = default;
};

/// Rightmost n/2 bits of a label; identifies the module the vertex lives in.
struct ModuleAddress {
  Word bits = 0;

  friend constexpr auto operator<=>(ModuleAddress, ModuleAddress) = default;
};

inline void require_valid(VertexLabel u, Dim dim) {
  if ((u.bits & ~dim.mask()) != 0) {
    throw ParameterError("label does not fit in n = " + std::to_string(dim.n()) + " bits");
  }
}

inline void require_valid(ModuleAddress b, Dim dim) {
  if ((b.bits & ~dim.half_mask()) != 0) {
    throw ParameterError("module address does not fit in n/2 = " + std::to_string(dim.half()) +
                         " bits");
  }
}

/// Bit access, 1-based from the left: s_1 is the top bit.
inline int bit_at(VertexLabel u, int i, Dim dim) {
  return static_cast<int>((u.bits >> (dim.n() - i)) & 1U);
}

/// Edge type. `interior` carries the swap parameter k in [2, d]; `external`
/// is the k = 1 swap (the cross edge, neighbor index d + 1).
class NeighborKind {
 public:
  enum class Tag : std::uint8_t { e1, interior, external, folded };

  constexpr NeighborKind() : NeighborKind(Tag::e1, 0) {}

  static constexpr NeighborKind e1() { return NeighborKind(Tag::e1, 0); }
  static constexpr NeighborKind interior(int k) { return NeighborKind(Tag::interior, k); }
  static constexpr NeighborKind external() { return NeighborKind(Tag::external, 1); }
  static constexpr NeighborKind folded() { return NeighborKind(Tag::folded, 0); }

  constexpr Tag tag() const noexcept { return tag_; }
  /// Swap parameter for interior (k) and external (1) edges, 0 otherwise.
  constexpr int swap_parameter() const noexcept { return k_; }

  std::string name() const {
    switch (tag_) {
      case Tag::e1: return "E1";
      case Tag::interior: return "Ek(" + std::to_string(k_) + ")";
      case Tag::external: return "External";
      case Tag::folded: return "Ef";
    }
    return "?";
  }

  friend constexpr bool operator==(NeighborKind, NeighborKind) = default;

 private:
  constexpr NeighborKind(Tag tag, int k) : tag_(tag), k_(k) {}

  Tag tag_;
  int k_;
};

struct Neighbor {
  NeighborKind kind;
  VertexLabel label;
};

/// Fixed-capacity neighbor list (degree never exceeds d + 2 <= 8).
class NeighborList {
 public:
  void push_back(Neighbor nb) { items_[size_++] = nb; }

  std::size_t size() const noexcept { return size_; }
  const Neighbor& operator[](std::size_t i) const { return items_[i]; }
  const Neighbor* begin() const noexcept { return items_.data(); }
  const Neighbor* end() const noexcept { return items_.data() + size_; }

  bool contains(VertexLabel v) const {
    for (const auto& nb : *this) {
      if (nb.label == v) return true;
    }
    return false;
  }

 private:
  std::array<Neighbor, kMaxDegree> items_{};
  std::size_t size_ = 0;
};

inline VertexLabel e1_neighbor(VertexLabel u, Dim dim) {
  require_valid(u, dim);
  return {u.bits ^ (Word{1} << (dim.n() - 1))};
}

inline VertexLabel f_neighbor(VertexLabel u, Dim dim) {
  require_valid(u, dim);
  return {u.bits ^ (Word{1} << (dim.n() - 2))};
}

/// The e(2n/2^k) rule: split u = m1 m2 m3 with |m1| = |m2| = n/2^k. Equal
/// blocks are both complemented, unequal blocks are exchanged; m3 is kept.
inline VertexLabel swap_neighbor(VertexLabel u, int k, Dim dim) {
  if (k < 1 || k > dim.d()) {
    throw ParameterError("swap parameter k must satisfy 1 <= k <= d = " + std::to_string(dim.d()) +
                         " (got k = " + std::to_string(k) + ")");
  }
  require_valid(u, dim);
  const int n = dim.n();
  const int p = n >> k;
  const Word block = low_mask(p);
  const Word m1 = (u.bits >> (n - p)) & block;
  const Word m2 = (u.bits >> (n - 2 * p)) & block;
  const Word m3 = u.bits & low_mask(n - 2 * p);
  Word hi = m2;
  Word lo = m1;
  if (m1 == m2) {
    hi = ~m1 & block;
    lo = ~m2 & block;
  }
  return {(hi << (n - p)) | (lo << (n - 2 * p)) | m3};
}

inline VertexLabel external_neighbor(VertexLabel u, Dim dim) { return swap_neighbor(u, 1, dim); }

/// Neighbor u_j: j = 1 is the e1 neighbor, 2 <= j <= d
/// the interior swap with parameter j, and j = d + 1 the external neighbor.
inline VertexLabel indexed_neighbor(VertexLabel u, int j, Dim dim) {
  if (j == 1) return e1_neighbor(u, dim);
  if (j >= 2 && j <= dim.d()) return swap_neighbor(u, j, dim);
  if (j == dim.d() + 1) return external_neighbor(u, dim);
  throw ParameterError("neighbor index must satisfy 1 <= j <= d + 1 = " +
                       std::to_string(dim.d() + 1) + " (got j = " + std::to_string(j) + ")");
}

/// Ordered as E1, Ek(2..d), External, then Ef for the folded variant.
inline NeighborList neighbor_set(VertexLabel u, Dim dim, Variant variant = Variant::fdsc) {
  NeighborList out;
  out.push_back({NeighborKind::e1(), e1_neighbor(u, dim)});
  for (int k = 2; k <= dim.d(); ++k) {
    out.push_back({NeighborKind::interior(k), swap_neighbor(u, k, dim)});
  }
  out.push_back({NeighborKind::external(), external_neighbor(u, dim)});
  if (variant == Variant::fdsc) out.push_back({NeighborKind::folded(), f_neighbor(u, dim)});
  return out;
}

/// Kind of the edge (u, v), or nullopt when u and v are not adjacent.
inline std::optional<NeighborKind> edge_kind(VertexLabel u, VertexLabel v, Dim dim,
                                             Variant variant = Variant::fdsc) {
  for (const auto& nb : neighbor_set(u, dim, variant)) {
    if (nb.label == v) return nb.kind;
  }
  return std::nullopt;
}

inline bool adjacent(VertexLabel u, VertexLabel v, Dim dim, Variant variant = Variant::fdsc) {
  return edge_kind(u, v, dim, variant).has_value();
}

inline ModuleAddress module_address(VertexLabel u, Dim dim) {
  require_valid(u, dim);
  return {u.bits & dim.half_mask()};
}

/// Upper half A of u = A B (the address inside the module).
inline Word inner_address(VertexLabel u, Dim dim) {
  require_valid(u, dim);
  return u.bits >> dim.half();
}

inline ModuleAddress complement(ModuleAddress b, Dim dim) { return {~b.bits & dim.half_mask()}; }

/// Label A B for upper half `a` and module address `b`.
inline VertexLabel concat(Word a, ModuleAddress b, Dim dim) {
  return {((a & dim.half_mask()) << dim.half()) | (b.bits & dim.half_mask())};
}

/// The two vertices B.B and complement(B).B of module B; their external
/// neighbors both lie in module complement(B).
inline std::pair<VertexLabel, VertexLabel> apex_pair(ModuleAddress b, Dim dim) {
  require_valid(b, dim);
  return {concat(b.bits, b, dim), concat(complement(b, dim).bits, b, dim)};
}

namespace detail {

inline Word parse_bits(std::string_view text, int width, const char* what) {
  if (text.size() != static_cast<std::size_t>(width)) {
    throw ParseError(std::string(what) + " must have exactly " + std::to_string(width) +
                         " characters (got " + std::to_string(text.size()) + ")",
                     std::min(text.size(), static_cast<std::size_t>(width)));
  }
  Word bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '0' && c != '1') {
      throw ParseError(std::string(what) + " has invalid character '" + std::string(1, c) +
                           "' at position " + std::to_string(i) + " (expected 0 or 1)",
                       i);
    }
    bits = (bits << 1) | static_cast<Word>(c - '0');
  }
  return bits;
}

inline std::string format_bits(Word bits, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((bits >> (width - 1 - i)) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

}  // namespace detail

inline VertexLabel parse_label(std::string_view text, Dim dim) {
  return {detail::parse_bits(text, dim.n(), "label")};
}

inline std::string format_label(VertexLabel u, Dim dim) { return detail::format_bits(u.bits, dim.n()); }

inline ModuleAddress parse_module_address(std::string_view text, Dim dim) {
  return {detail::parse_bits(text, dim.half(), "module address")};
}

inline std::string format_module_address(ModuleAddress b, Dim dim) {
  return detail::format_bits(b.bits, dim.half());
}

}  // namespace fdsc
