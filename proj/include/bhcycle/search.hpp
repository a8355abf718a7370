#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bhcycle/faults.hpp"
#include "bhcycle/topology.hpp"

// Bounded backtracking for vertex-disjoint path systems in a (faulty) subcube.
//
// The search grows one path at a time in deterministic neighbor order,
// preferring candidates with the fewest unvisited neighbors. Each node prunes
// when (a) some vertex that must still be visited has fewer than two usable
// neighbors left (one for path ends), (b) a color class can no longer supply
// the vertices still required, (c) the remaining graph cannot reach the
// current target within the remaining length, or (d) two neighbors of the
// head are each forced to be visited next.
namespace bhcycle::search {

enum class Status { found, infeasible, exhausted };

/// A subcube with faults removed, relabeled 0..4^m-1 by Subcube::to_local.
struct LocalGraph {
  Subcube view;
  std::vector<std::vector<int>> adj;  // usable edges only, deterministic order
  std::vector<std::uint8_t> black;
  std::vector<std::uint8_t> usable;
  std::array<int, 2> usable_count{};  // white, black

  static LocalGraph build(const Subcube& view, const FaultScenario& faults, std::span<const VertexId> blocked = {},
                          std::span<const Edge> removed = {});

  int size() const { return static_cast<int>(adj.size()); }
  int local(VertexId v) const { return static_cast<int>(view.to_local(v)); }
  VertexId ambient(int l) const { return view.to_ambient(static_cast<std::uint32_t>(l)); }
};

struct Segment {
  int source = -1;
  int target = -1;
};

/// Vertex-disjoint paths source_k -> target_k, traversed in order, together
/// visiting exactly visit_count[0] white and visit_count[1] black vertices.
struct CoverRequest {
  std::vector<Segment> segments;
  std::array<int, 2> visit_count{};
};

struct CoverResult {
  Status status = Status::infeasible;
  std::vector<std::vector<int>> paths;  // local indices
  std::uint64_t nodes = 0;
};

CoverResult cover(const LocalGraph& g, const CoverRequest& request, std::uint64_t node_limit);

struct SequenceResult {
  Status status = Status::infeasible;
  std::vector<VertexId> vertices;  // ambient
  std::uint64_t nodes = 0;
};

/// Path from -> to with exactly `length` edges.
SequenceResult path_of_length(const LocalGraph& g, VertexId from, VertexId to, int length, std::uint64_t node_limit);

/// Cycle of exactly `length` containing edge e, listed starting e.u, e.v.
SequenceResult cycle_through(const LocalGraph& g, const Edge& e, int length, std::uint64_t node_limit);

/// Any cycle of exactly `length`: anchor edges are tried in canonical order.
SequenceResult cycle_of_length(const LocalGraph& g, int length, std::uint64_t node_limit);

}  // namespace bhcycle::search
