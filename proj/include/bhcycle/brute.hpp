#pragma once

#include <cstdint>

#include "bhcycle/faults.hpp"

namespace bhcycle {

inline constexpr int kBruteForceMaxVertices = 24;

struct BruteForceResult {
  int longest_cycle = 0;  // 0 when no fault-free cycle exists
  std::uint64_t nodes = 0;
};

/// Exact maximum fault-free cycle length in BH_{s.n} by exhaustive DFS; each
/// cycle is enumerated from its smallest vertex only. Uses nothing but the
/// adjacency rule, so it is independent of the construction code.
/// Throws CapacityError above kBruteForceMaxVertices vertices.
BruteForceResult brute_longest_cycle(const FaultScenario& s);

}  // namespace bhcycle
