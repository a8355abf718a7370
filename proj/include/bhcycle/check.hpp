#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bhcycle/faults.hpp"
#include "bhcycle/witness.hpp"

namespace bhcycle {

enum class ViolationType { not_adjacent, repeated_vertex, faulty_vertex, faulty_edge, wrong_length, odd_parity, wrong_endpoint, outside_subcube };

const char* to_string(ViolationType t);

struct CheckViolation {
  ViolationType type;
  // Index into the witness sequence; -1 for whole-witness violations.
  int location = -1;
};

struct CheckReport {
  std::vector<CheckViolation> violations;

  bool valid() const { return violations.empty(); }
  bool has(ViolationType t) const;
  std::string summary() const;
};

/// Adjacency, distinctness, fault-freeness, exact length and even parity.
/// Adjacency is judged in BH_{s.n}.
CheckReport check_cycle(const FaultScenario& s, const CycleWitness& c, std::size_t expected_length);

/// As check_cycle plus endpoint verification; parity must match the endpoint
/// colors (odd for opposite colors).
CheckReport check_path(const FaultScenario& s, const PathWitness& p, std::size_t expected_length,
                       std::optional<std::pair<VertexId, VertexId>> expected_endpoints = std::nullopt);

/// Additionally require every vertex to lie in view.
CheckReport check_cycle_in(const FaultScenario& s, const Subcube& view, const CycleWitness& c, std::size_t expected_length);
CheckReport check_path_in(const FaultScenario& s, const Subcube& view, const PathWitness& p, std::size_t expected_length,
                          std::optional<std::pair<VertexId, VertexId>> expected_endpoints = std::nullopt);

}  // namespace bhcycle
