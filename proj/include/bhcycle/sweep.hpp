#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bhcycle/faults.hpp"
#include "bhcycle/oracles.hpp"

namespace bhcycle {

enum class SweepMode { exhaustive, random };
/// theorem: longest_fault_free_cycle; lemma: adjacent_fault_free_path.
enum class SweepTarget { theorem, lemma };
/// clustered puts every fault in one member of a random split, which is how
/// the single-heavy-member branches get exercised.
enum class FaultPlacement { uniform, clustered, mixed };

struct SweepConfig {
  int n = 2;
  SweepTarget target = SweepTarget::theorem;
  SweepMode mode = SweepMode::exhaustive;
  // negative values mean the hypothesis limits: n-1 and 2n-2 (theorem) or n-1 (lemma)
  int max_vertex_faults = -1;
  int max_total_faults = -1;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  FaultPlacement placement = FaultPlacement::mixed;
  unsigned threads = 0;  // 0: hardware concurrency
  SearchBudget budget;
  bool compare_brute_force = false;  // theorem sweeps with n <= 2
};

struct SweepCase {
  FaultScenario scenario;
  std::optional<std::pair<VertexId, VertexId>> ends;  // lemma sweeps
};

struct SweepFailure {
  SweepCase input;
  std::string error;
  std::string instance;
};

struct SweepSummary {
  std::size_t scenario_count = 0;
  std::size_t success_count = 0;
  std::map<std::string, std::size_t> branch_histogram;
  double max_runtime_ms = 0;
  double total_runtime_ms = 0;
  std::vector<SweepFailure> failures;
  // brute force comparison, when enabled
  std::size_t brute_compared = 0;
  std::size_t brute_equal = 0;
  std::size_t brute_exceeded = 0;  // engine longer than the exhaustive maximum

  bool all_passed() const { return success_count == scenario_count && failures.empty() && brute_exceeded == 0; }
};

int vertex_fault_limit(const SweepConfig& c);
int total_fault_limit(const SweepConfig& c);

/// Every scenario within the limits (and, for lemma sweeps, every ordered
/// pair of adjacent fault-free ends). n <= 2 only; throws CapacityError.
std::vector<SweepCase> exhaustive_cases(const SweepConfig& c);

/// c.samples seeded cases; case i depends only on (c.seed, i).
std::vector<SweepCase> random_cases(const SweepConfig& c);

SweepSummary run_cases(const SweepConfig& c, std::span<const SweepCase> cases);

/// Generates the cases for c.mode and runs them.
SweepSummary sweep(const SweepConfig& c);

}  // namespace bhcycle
