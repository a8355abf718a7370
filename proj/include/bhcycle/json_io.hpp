#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bhcycle/faults.hpp"
#include "bhcycle/sweep.hpp"
#include "bhcycle/witness.hpp"

// Scenario:  {"n": 2, "faulty_vertices": [[0,0]], "faulty_edges": [[[0,0],[1,1]]]}
// Witness:   {"kind": "cycle", "length": 14, "vertices": [[3,0],...], "trace": ["Thm3/BaseN2"]}
// Addresses are digit arrays a_0 first.
namespace bhcycle {

nlohmann::json vertex_to_json(VertexId v, int n);
/// Throws MalformedAddress.
VertexId vertex_from_json(const nlohmann::json& j, int n);

/// Accepts "(0,1,2)", "0,1,2" or "0 1 2". Throws MalformedAddress.
VertexId parse_address(std::string_view text, int n);

nlohmann::json scenario_to_json(const FaultScenario& s);
/// Structural parsing only (addresses, adjacency); budgets are left to validate().
/// Throws MalformedAddress, NotAnEdge or Error.
FaultScenario scenario_from_json(const nlohmann::json& j);

enum class WitnessKind { cycle, path };

struct WitnessDocument {
  WitnessKind kind = WitnessKind::cycle;
  std::vector<VertexId> vertices;
  std::size_t length = 0;
  std::vector<std::string> trace;
};

nlohmann::json witness_to_json(const WitnessDocument& w, int n);
/// Without "kind", a length equal to the vertex count means a cycle.
WitnessDocument witness_from_json(const nlohmann::json& j, int n);

nlohmann::json sweep_to_json(const SweepConfig& c, const SweepSummary& s);

}  // namespace bhcycle
