#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bhcycle {

// Canonical vertex index: sum of a_k * 4^k, inner index least significant.
using VertexId = std::uint32_t;

inline constexpr int kHardMaxDimension = 15;
inline constexpr int kDefaultMaxDimension = 4;

enum class Color : std::uint8_t { white, black };

constexpr int digit(VertexId v, int k) { return static_cast<int>((v >> (2 * k)) & 3u); }

constexpr VertexId with_digit(VertexId v, int k, int d) {
  const VertexId mask = VertexId{3} << (2 * k);
  return (v & ~mask) | (static_cast<VertexId>(d & 3) << (2 * k));
}

constexpr Color color_of(VertexId v) { return (v & 1u) ? Color::black : Color::white; }

/// +1 for white vertices (extra neighbors one member up), -1 for black.
constexpr int direction_of(VertexId v) { return (v & 1u) ? -1 : 1; }

constexpr std::uint64_t vertex_count(int n) { return std::uint64_t{1} << (2 * n); }

/// Vertex with the same neighborhood: inner index shifted by 2.
constexpr VertexId twin(VertexId v) { return with_digit(v, 0, digit(v, 0) + 2); }

/// Base-4 address (a_0, ..., a_{n-1}).
class VertexAddress {
 public:
  VertexAddress() = default;
  explicit VertexAddress(std::vector<int> digits);

  static VertexAddress from_index(VertexId id, int n);

  int dimension() const { return static_cast<int>(digits_.size()); }
  int digit(int k) const { return digits_.at(static_cast<std::size_t>(k)); }
  const std::vector<int>& digits() const { return digits_; }
  VertexId index() const;
  Color color() const { return digits_.empty() || digits_[0] % 2 == 0 ? Color::white : Color::black; }

  /// "(a_0,a_1,...)"
  std::string to_string() const;

  auto operator<=>(const VertexAddress&) const = default;

 private:
  std::vector<int> digits_;
};

std::string format_vertex(VertexId v, int n);

/// Undirected edge, stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  auto operator<=>(const Edge&) const = default;
};

constexpr Edge make_edge(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::string format_edge(const Edge& e, int n);

void check_dimension(int n);
void check_vertex(VertexId v, int n);

/// The 2n neighbors in deterministic order: dimension 0 first, then j = 1..n-1;
/// within a dimension the +1 variant before the -1 variant.
std::vector<VertexId> neighbors(VertexId v, int n);
std::vector<VertexAddress> neighbors(const VertexAddress& v);

/// The two neighbors of v across dimension j >= 1, +1 variant first.
std::array<VertexId, 2> extra_neighbors(VertexId v, int j);

bool adjacent(VertexId a, VertexId b, int n);

/// 0 if only a_0 differs, otherwise the unique j >= 1 that differs.
/// Throws NotAnEdge if the endpoints are not adjacent.
int edge_dimension(const Edge& e, int n);
int edge_dimension(const VertexAddress& a, const VertexAddress& b);

VertexAddress twin(const VertexAddress& v);

/// Materialized BH_n adjacency. Immutable after construction.
class BalancedHypercube {
 public:
  /// Throws CapacityError when n exceeds max_dimension.
  explicit BalancedHypercube(int n, int max_dimension = kDefaultMaxDimension);

  int dimension() const { return n_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return vertex_count_ * static_cast<std::size_t>(n_); }
  int degree() const { return 2 * n_; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + static_cast<std::size_t>(v) * degree(), static_cast<std::size_t>(degree())};
  }

  /// All edges, sorted.
  std::vector<Edge> edges() const;

 private:
  int n_;
  std::size_t vertex_count_;
  std::vector<VertexId> adjacency_;
};

/// An induced sub-balanced-hypercube: the vertices whose digits in a set of
/// fixed dimensions equal given values. The inner index is never fixed, and
/// the induced graph is a BH_m on the free dimensions.
class Subcube {
 public:
  /// The whole BH_n.
  explicit Subcube(int n);

  int ambient_dimension() const { return n_; }
  /// Local dimension m = number of free dimensions.
  int dimension() const { return static_cast<int>(free_.size()); }
  const std::vector<int>& free_dimensions() const { return free_; }
  std::uint64_t size() const { return vertex_count(dimension()); }

  bool contains(VertexId v) const { return (v & fixed_mask_) == fixed_bits_; }
  bool contains(const Edge& e) const { return contains(e.u) && contains(e.v); }

  /// Member with digit j fixed to value i. j must be a free dimension >= 1.
  Subcube member(int j, int i) const;

  VertexId to_ambient(std::uint32_t local) const;
  std::uint32_t to_local(VertexId v) const;

  /// Vertices in canonical (ascending index) order.
  std::vector<VertexId> vertices() const;
  /// Neighbors of v inside this subcube, deterministic order.
  std::vector<VertexId> neighbors(VertexId v) const;

  std::string describe() const;

  bool operator==(const Subcube&) const = default;

 private:
  int n_;
  VertexId fixed_mask_ = 0;
  VertexId fixed_bits_ = 0;
  std::vector<int> free_;
};

/// Split of BH_n along dimension j >= 1 into four BH_{n-1} members.
struct SubcubeFrame {
  int n = 0;
  int split_dimension = 0;
  std::array<std::vector<VertexId>, 4> members;
  /// crossing_edges[i] joins member i and member i+1 (mod 4).
  std::array<std::vector<Edge>, 4> crossing_edges;

  /// Address in BH_{n-1} obtained by deleting digit j.
  VertexId project(VertexId v) const;
  /// Inverse of project for member i.
  VertexId lift(VertexId projected, int i) const;
  Subcube member_view(int i) const;
};

/// Throws UnsupportedSplit unless 1 <= j <= n-1.
SubcubeFrame split(int n, int j);

}  // namespace bhcycle
