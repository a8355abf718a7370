#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bhcycle/faults.hpp"
#include "bhcycle/topology.hpp"
#include "bhcycle/witness.hpp"

// Search-backed embedding primitives on a subcube view. Each call checks its
// hypotheses against the faults inside the view, runs the backtracking engine
// and passes the witness through the independent checker before returning it.
namespace bhcycle {

struct SearchBudget {
  std::uint64_t node_limit = 10'000'000;
};

enum class OracleStatus { found, exhausted, infeasible, hypothesis_violation };

const char* to_string(OracleStatus s);

template <class W>
struct OracleResult {
  OracleStatus status = OracleStatus::infeasible;
  W witness{};
  std::uint64_t nodes = 0;
  std::string detail;

  bool found() const { return status == OracleStatus::found; }
};

struct PathPair {
  PathWitness first;
  PathWitness second;
};

/// Hamiltonian x-y path; x, y of opposite colors, no faulty vertices and at
/// most 2m-2 faulty edges in the view.
OracleResult<PathWitness> ham_path(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y,
                                   SearchBudget budget = {});

/// ham_path for adjacent end vertices.
OracleResult<PathWitness> ham_path_adjacent(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y,
                                            SearchBudget budget = {});

/// Cycle of exactly `length` through the fault-free edge e, listed from e.u, e.v.
/// Faults must satisfy either F_e empty, |F_v| <= m-1, length <= 4^m - 2|F_v|,
/// or F_v empty, |F_e| <= 2m-3, length <= 4^m.
OracleResult<CycleWitness> cycle_through_edge(const Subcube& view, const FaultScenario& faults, const Edge& e, int length,
                                              SearchBudget budget = {});

/// x-y path of exactly `length` in a fault-free view; the parity of length
/// must match the colors of x and y.
OracleResult<PathWitness> bipan_path(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y, int length,
                                     SearchBudget budget = {});

/// Path between same-colored x and y through every vertex except `deleted`,
/// which has the other color. Length 4^m - 2.
OracleResult<PathWitness> hyper_ham_path(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y,
                                         VertexId deleted, SearchBudget budget = {});

/// Vertex-disjoint x-y and u-v paths covering the fault-free view, where x, u
/// share one color and y, v the other.
OracleResult<PathPair> two_disjoint_spanning_paths(const Subcube& view, const FaultScenario& faults, VertexId x,
                                                   VertexId y, VertexId u, VertexId v, SearchBudget budget = {});

/// Every 8-cycle through e that alternates member edges and dimension-j
/// crossing edges with exactly one edge in each member, in enumeration order.
/// All vertices and every edge other than e must be fault-free; e itself is
/// not checked, so a crossing e yields the 7-paths joining its ends.
std::vector<CycleWitness> eight_cycles_one_edge_per_subcube(const Subcube& view, const FaultScenario& faults, int j,
                                                            const Edge& e);

/// First cycle of eight_cycles_one_edge_per_subcube, listed from e.u, e.v.
OracleResult<CycleWitness> eight_cycle_one_edge_per_subcube(const Subcube& view, const FaultScenario& faults, int j,
                                                            const Edge& e);

/// One such 8-cycle per input edge; the edges must share a dimension and lie in
/// one member. Cycles are pairwise edge-disjoint, vertex-disjoint when their
/// input edges are, and meet only in the shared end vertex otherwise.
OracleResult<std::vector<CycleWitness>> edge_disjoint_eight_cycles(const Subcube& view, const FaultScenario& faults,
                                                                   int j, std::span<const Edge> edges,
                                                                   SearchBudget budget = {});

}  // namespace bhcycle
