#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bhcycle/topology.hpp"

namespace bhcycle {

/// Faulty vertices and faulty edges of BH_n. Out-of-budget scenarios are
/// representable; `validate` decides whether one is a theorem input.
struct FaultScenario {
  int n = 0;
  std::set<VertexId> faulty_vertices;
  std::set<Edge> faulty_edges;

  bool vertex_faulty(VertexId v) const { return faulty_vertices.contains(v); }
  bool edge_faulty(VertexId a, VertexId b) const { return faulty_edges.contains(make_edge(a, b)); }
  /// Both endpoints fault-free and the edge itself fault-free.
  bool edge_usable(VertexId a, VertexId b) const {
    return !vertex_faulty(a) && !vertex_faulty(b) && !edge_faulty(a, b);
  }

  int vertex_fault_count() const { return static_cast<int>(faulty_vertices.size()); }
  int edge_fault_count() const { return static_cast<int>(faulty_edges.size()); }
  int fault_count() const { return vertex_fault_count() + edge_fault_count(); }

  bool operator==(const FaultScenario&) const = default;
};

/// Faults of s lying inside view (vertices in it, edges with both ends in it).
FaultScenario restrict_to(const FaultScenario& s, const Subcube& view);

/// Copy of s without the given faulty vertex (overlay used for temporary
/// relaxation; s itself is never modified).
FaultScenario without_vertex(const FaultScenario& s, VertexId v);
FaultScenario without_edge(const FaultScenario& s, const Edge& e);

enum class ViolationKind { invalid_dimension, invalid_vertex, invalid_edge, vertex_budget, total_budget };

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks membership plus |F_v| <= m-1 and |F_v|+|F_e| <= 2m-2 where m is the
/// dimension of the (sub)cube the scenario is judged in.
ValidationReport validate(const FaultScenario& s);
ValidationReport validate(const FaultScenario& s, const Subcube& view);

/// Per-member fault counts for a split along dimension j.
struct SubcubeTally {
  int split_dimension = 0;
  std::array<int, 4> faulty_vertices{};
  std::array<int, 4> faulty_edges{};
  int faulty_crossing = 0;

  int load(int i) const { return faulty_vertices[static_cast<std::size_t>(i & 3)] + faulty_edges[static_cast<std::size_t>(i & 3)]; }
  int vertex_total() const;
  int edge_total() const;
  /// Same tally with member c relabeled as member 0 (i -> i - c mod 4).
  SubcubeTally rotated(int c) const;
};

/// Throws UnsupportedSplit unless 1 <= j <= n-1.
SubcubeTally tally(const FaultScenario& s, int j);
/// Tally of the faults inside view, split along the free dimension j.
SubcubeTally tally(const FaultScenario& s, const Subcube& view, int j);

/// |F_e ∩ E_j| for every j in [n].
std::vector<int> faulty_edges_per_dimension(const FaultScenario& s);

/// Smallest j >= 1 with |F_e ∩ E_j| <= 1 when faulty vertices exist; none when
/// F_v is empty.
std::optional<int> choose_split_dimension(const FaultScenario& s);
std::optional<int> choose_split_dimension(const FaultScenario& s, const Subcube& view);

}  // namespace bhcycle
