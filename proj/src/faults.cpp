#include "bhcycle/faults.hpp"

#include "bhcycle/errors.hpp"

namespace bhcycle {

FaultScenario restrict_to(const FaultScenario& s, const Subcube& view) {
  FaultScenario out;
  out.n = s.n;
  for (VertexId v : s.faulty_vertices) {
    if (view.contains(v)) out.faulty_vertices.insert(v);
  }
  for (const Edge& e : s.faulty_edges) {
    if (view.contains(e)) out.faulty_edges.insert(e);
  }
  return out;
}

FaultScenario without_vertex(const FaultScenario& s, VertexId v) {
  FaultScenario out = s;
  out.faulty_vertices.erase(v);
  return out;
}

FaultScenario without_edge(const FaultScenario& s, const Edge& e) {
  FaultScenario out = s;
  out.faulty_edges.erase(e);
  return out;
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

ValidationReport validate(const FaultScenario& s) {
  if (s.n < 1 || s.n > kHardMaxDimension) {
    ValidationReport report;
    report.violations.push_back({ViolationKind::invalid_dimension, "dimension n=" + std::to_string(s.n) + " unsupported"});
    return report;
  }
  return validate(s, Subcube(s.n));
}

ValidationReport validate(const FaultScenario& s, const Subcube& view) {
  ValidationReport report;
  const int m = view.dimension();
  const auto limit = vertex_count(s.n);
  for (VertexId v : s.faulty_vertices) {
    if (v >= limit || !view.contains(v)) {
      report.violations.push_back({ViolationKind::invalid_vertex, "faulty vertex index " + std::to_string(v) + " not in " + view.describe()});
    }
  }
  for (const Edge& e : s.faulty_edges) {
    if (e.u >= limit || e.v >= limit || !adjacent(e.u, e.v, s.n) || !view.contains(e)) {
      report.violations.push_back({ViolationKind::invalid_edge, "faulty edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} not an edge of " + view.describe()});
    }
  }
  const int fv = s.vertex_fault_count();
  const int f = s.fault_count();
  if (fv > m - 1) {
    report.violations.push_back({ViolationKind::vertex_budget, "|F_v| = " + std::to_string(fv) + " > n-1 = " + std::to_string(m - 1)});
  }
  if (f > 2 * m - 2) {
    report.violations.push_back({ViolationKind::total_budget, "|F_v|+|F_e| = " + std::to_string(f) + " > 2n-2 = " + std::to_string(2 * m - 2)});
  }
  return report;
}

int SubcubeTally::vertex_total() const {
  return faulty_vertices[0] + faulty_vertices[1] + faulty_vertices[2] + faulty_vertices[3];
}

int SubcubeTally::edge_total() const {
  return faulty_edges[0] + faulty_edges[1] + faulty_edges[2] + faulty_edges[3] + faulty_crossing;
}

SubcubeTally SubcubeTally::rotated(int c) const {
  SubcubeTally out = *this;
  for (int i = 0; i < 4; ++i) {
    out.faulty_vertices[static_cast<std::size_t>(i)] = faulty_vertices[static_cast<std::size_t>((i + c) & 3)];
    out.faulty_edges[static_cast<std::size_t>(i)] = faulty_edges[static_cast<std::size_t>((i + c) & 3)];
  }
  return out;
}

SubcubeTally tally(const FaultScenario& s, int j) {
  if (j < 1 || j >= s.n) {
    throw UnsupportedSplit("split dimension " + std::to_string(j) + " not in 1.." + std::to_string(s.n - 1));
  }
  return tally(s, Subcube(s.n), j);
}

SubcubeTally tally(const FaultScenario& s, const Subcube& view, int j) {
  view.member(j, 0);  // throws UnsupportedSplit for a non-free dimension
  SubcubeTally t;
  t.split_dimension = j;
  for (VertexId v : s.faulty_vertices) {
    if (view.contains(v)) ++t.faulty_vertices[static_cast<std::size_t>(digit(v, j))];
  }
  for (const Edge& e : s.faulty_edges) {
    if (!view.contains(e)) continue;
    if (digit(e.u, j) == digit(e.v, j)) {
      ++t.faulty_edges[static_cast<std::size_t>(digit(e.u, j))];
    } else {
      ++t.faulty_crossing;
    }
  }
  return t;
}

std::vector<int> faulty_edges_per_dimension(const FaultScenario& s) {
  std::vector<int> counts(static_cast<std::size_t>(s.n), 0);
  for (const Edge& e : s.faulty_edges) ++counts[static_cast<std::size_t>(edge_dimension(e, s.n))];
  return counts;
}

std::optional<int> choose_split_dimension(const FaultScenario& s) { return choose_split_dimension(s, Subcube(s.n)); }

std::optional<int> choose_split_dimension(const FaultScenario& s, const Subcube& view) {
  bool any_vertex = false;
  for (VertexId v : s.faulty_vertices) any_vertex = any_vertex || view.contains(v);
  if (!any_vertex) return std::nullopt;
  for (int j : view.free_dimensions()) {
    if (j == 0) continue;
    int crossing = 0;
    for (const Edge& e : s.faulty_edges) {
      if (view.contains(e) && digit(e.u, j) != digit(e.v, j)) ++crossing;
    }
    if (crossing <= 1) return j;
  }
  return std::nullopt;
}

}  // namespace bhcycle
