#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhcycle/faults.hpp"
#include "bhcycle/oracles.hpp"
#include "bhcycle/witness.hpp"

namespace bhcycle {

enum class Branch {
  thm_base_n2,
  thm_no_faulty_vertices,
  thm_case_1_1,
  thm_case_1_2_1,
  thm_case_1_2_2,
  thm_case_1_3_1_1,
  thm_case_1_3_1_2,
  thm_case_1_3_2,
  thm_case_2_1,
  thm_case_2_2,
  thm_case_3_1,
  thm_case_3_2,
  thm_case_3_3,
  thm_case_3_4_1,
  thm_case_3_4_2,
  l31_base_n1,
  l31_base_n2,
  l31_no_faulty_edges,
  l31_case_1,
  l31_case_2,
  l31_direct_search,
};

inline constexpr std::array kAllBranches = {
    Branch::thm_base_n2,      Branch::thm_no_faulty_vertices, Branch::thm_case_1_1,   Branch::thm_case_1_2_1,
    Branch::thm_case_1_2_2,   Branch::thm_case_1_3_1_1,       Branch::thm_case_1_3_1_2, Branch::thm_case_1_3_2,
    Branch::thm_case_2_1,     Branch::thm_case_2_2,           Branch::thm_case_3_1,   Branch::thm_case_3_2,
    Branch::thm_case_3_3,     Branch::thm_case_3_4_1,         Branch::thm_case_3_4_2, Branch::l31_base_n1,
    Branch::l31_base_n2,      Branch::l31_no_faulty_edges,    Branch::l31_case_1,     Branch::l31_case_2,
    Branch::l31_direct_search,
};

/// "Thm3/Case1.2.2", "L31/BaseN1", ...
const char* label(Branch b);
std::optional<Branch> branch_from_label(std::string_view text);
bool is_theorem_branch(Branch b);

struct TraceEntry {
  Branch branch = Branch::thm_base_n2;
  int depth = 0;
  int dimension = 0;        // m of the subcube handled at this level
  int vertex_faults = 0;    // faults inside that subcube
  int edge_faults = 0;
  int split_dimension = 0;  // 0 when the branch does not split
  int rotation = 0;         // physical index of the member treated as member 0
  SubcubeTally tally;       // rotated so that member 0 comes first
};

struct ConstructionTrace {
  std::vector<TraceEntry> entries;

  std::vector<std::string> labels() const;
  bool contains(Branch b) const;
};

struct EmbeddingOptions {
  SearchBudget budget;
};

struct CycleConstruction {
  CycleWitness cycle;
  ConstructionTrace trace;
};

struct PathConstruction {
  PathWitness path;
  ConstructionTrace trace;
};

/// Fault-free cycle of length 4^n - 2|F_v| for a validated scenario, n >= 2.
/// Throws HypothesisViolation or OracleFailure.
CycleConstruction longest_fault_free_cycle(const FaultScenario& s, const EmbeddingOptions& options = {});

/// Fault-free x-y path of length 4^n - 2|F_v| - 1 between adjacent fault-free
/// vertices when |F_v| + |F_e| <= n - 1. The edge (x, y) itself may be faulty.
PathConstruction adjacent_fault_free_path(const FaultScenario& s, VertexId x, VertexId y,
                                          const EmbeddingOptions& options = {});

struct Table1Row {
  std::array<VertexId, 2> faulty_vertices;
  CycleWitness cycle;
};

/// The faulty edge ((0,0),(1,1)) shared by every catalog row.
Edge table1_faulty_edge();

/// The eight published 14-cycles of BH_2, each valid for both listed faulty
/// vertices together with table1_faulty_edge().
const std::vector<Table1Row>& table1_catalog();

/// Scenario for row `row`, faulty vertex `which` (0 or 1).
FaultScenario table1_scenario(int row, int which);

}  // namespace bhcycle
