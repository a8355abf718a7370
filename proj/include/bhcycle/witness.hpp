#pragma once

#include <cstddef>
#include <vector>

#include "bhcycle/topology.hpp"

namespace bhcycle {

/// Vertex sequence <u_0, ..., u_k>; length k.
struct PathWitness {
  std::vector<VertexId> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  bool operator==(const PathWitness&) const = default;
};

/// Cyclic vertex sequence, closing edge implied; length = number of vertices.
struct CycleWitness {
  std::vector<VertexId> vertices;

  std::size_t length() const { return vertices.size(); }
  bool operator==(const CycleWitness&) const = default;
};

}  // namespace bhcycle
