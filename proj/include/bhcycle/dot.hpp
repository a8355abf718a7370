#pragma once

#include <string>
#include <vector>

#include "bhcycle/faults.hpp"

namespace bhcycle {

struct DotStyle {
  const FaultScenario* faults = nullptr;          // drawn red and dashed
  const std::vector<VertexId>* witness = nullptr;  // drawn bold blue
  bool witness_is_cycle = true;
};

/// Undirected DOT graph of BH_n. Nodes are labeled "(a_0,...)"; white
/// vertices are unfilled and black vertices filled black.
std::string to_dot(int n, const DotStyle& style = {});

}  // namespace bhcycle
