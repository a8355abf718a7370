#include "bhcycle/check.hpp"

#include <unordered_set>

namespace bhcycle {
namespace {

// Adjacency re-derived from the address rule on explicit digit vectors, kept
// separate from the topology module's bit arithmetic.
bool definition_adjacent(VertexId a, VertexId b, int n) {
  std::vector<int> da(static_cast<std::size_t>(n)), db(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    da[static_cast<std::size_t>(k)] = static_cast<int>((a >> (2 * k)) & 3u);
    db[static_cast<std::size_t>(k)] = static_cast<int>((b >> (2 * k)) & 3u);
  }
  for (int sign : {1, -1}) {
    std::vector<int> c = da;
    c[0] = ((da[0] + sign) % 4 + 4) % 4;
    if (c == db) return true;
    const int shift = da[0] % 2 == 0 ? 1 : -1;
    for (int j = 1; j < n; ++j) {
      std::vector<int> w = c;
      w[static_cast<std::size_t>(j)] = ((da[static_cast<std::size_t>(j)] + shift) % 4 + 4) % 4;
      if (w == db) return true;
    }
  }
  return false;
}

void check_sequence(const FaultScenario& s, const std::vector<VertexId>& seq, bool closed, const Subcube* view,
                    CheckReport& report) {
  const auto limit = vertex_count(s.n);
  std::unordered_set<VertexId> seen;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const VertexId v = seq[i];
    const int loc = static_cast<int>(i);
    if (v >= limit || (view && !view->contains(v))) report.violations.push_back({ViolationType::outside_subcube, loc});
    if (!seen.insert(v).second) report.violations.push_back({ViolationType::repeated_vertex, loc});
    if (s.faulty_vertices.contains(v)) report.violations.push_back({ViolationType::faulty_vertex, loc});
  }
  const std::size_t hops = closed ? seq.size() : (seq.empty() ? 0 : seq.size() - 1);
  for (std::size_t i = 0; i < hops; ++i) {
    const VertexId a = seq[i];
    const VertexId b = seq[(i + 1) % seq.size()];
    const int loc = static_cast<int>(i);
    if (a >= limit || b >= limit || !definition_adjacent(a, b, s.n)) {
      report.violations.push_back({ViolationType::not_adjacent, loc});
    } else if (s.faulty_edges.contains(make_edge(a, b))) {
      report.violations.push_back({ViolationType::faulty_edge, loc});
    }
  }
}

CheckReport cycle_impl(const FaultScenario& s, const Subcube* view, const CycleWitness& c, std::size_t expected_length) {
  CheckReport report;
  check_sequence(s, c.vertices, true, view, report);
  if (c.length() != expected_length || c.length() < 4) report.violations.push_back({ViolationType::wrong_length, -1});
  if (c.length() % 2 != 0) report.violations.push_back({ViolationType::odd_parity, -1});
  return report;
}

CheckReport path_impl(const FaultScenario& s, const Subcube* view, const PathWitness& p, std::size_t expected_length,
                      std::optional<std::pair<VertexId, VertexId>> ends) {
  CheckReport report;
  check_sequence(s, p.vertices, false, view, report);
  if (p.vertices.empty() || p.length() != expected_length) report.violations.push_back({ViolationType::wrong_length, -1});
  if (!p.vertices.empty()) {
    const bool opposite = ((p.front() ^ p.back()) & 1u) != 0;
    if ((p.length() % 2 == 1) != opposite) report.violations.push_back({ViolationType::odd_parity, -1});
    if (ends) {
      if (p.front() != ends->first) report.violations.push_back({ViolationType::wrong_endpoint, 0});
      if (p.back() != ends->second) {
        report.violations.push_back({ViolationType::wrong_endpoint, static_cast<int>(p.vertices.size() - 1)});
      }
    }
  }
  return report;
}

}  // namespace

const char* to_string(ViolationType t) {
  switch (t) {
    case ViolationType::not_adjacent: return "not-adjacent";
    case ViolationType::repeated_vertex: return "repeated-vertex";
    case ViolationType::faulty_vertex: return "faulty-vertex";
    case ViolationType::faulty_edge: return "faulty-edge";
    case ViolationType::wrong_length: return "wrong-length";
    case ViolationType::odd_parity: return "odd-parity";
    case ViolationType::wrong_endpoint: return "wrong-endpoint";
    case ViolationType::outside_subcube: return "outside-subcube";
  }
  return "unknown";
}

bool CheckReport::has(ViolationType t) const {
  for (const auto& v : violations) {
    if (v.type == t) return true;
  }
  return false;
}

std::string CheckReport::summary() const {
  if (valid()) return "valid";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += ", ";
    out += to_string(v.type);
    if (v.location >= 0) out += "@" + std::to_string(v.location);
  }
  return out;
}

CheckReport check_cycle(const FaultScenario& s, const CycleWitness& c, std::size_t expected_length) {
  return cycle_impl(s, nullptr, c, expected_length);
}

CheckReport check_path(const FaultScenario& s, const PathWitness& p, std::size_t expected_length,
                       std::optional<std::pair<VertexId, VertexId>> expected_endpoints) {
  return path_impl(s, nullptr, p, expected_length, expected_endpoints);
}

CheckReport check_cycle_in(const FaultScenario& s, const Subcube& view, const CycleWitness& c, std::size_t expected_length) {
  return cycle_impl(s, &view, c, expected_length);
}

CheckReport check_path_in(const FaultScenario& s, const Subcube& view, const PathWitness& p, std::size_t expected_length,
                          std::optional<std::pair<VertexId, VertexId>> expected_endpoints) {
  return path_impl(s, &view, p, expected_length, expected_endpoints);
}

}  // namespace bhcycle
