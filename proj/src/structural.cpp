#include "bhcycle/structural.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bhcycle/errors.hpp"
#include "bhcycle/topology.hpp"

namespace bhcycle {

namespace {

class Recorder {
 public:
  explicit Recorder(StructuralReport& r) : report_(r) {}

  void expect(const std::string& name, bool condition, const std::string& detail) {
    auto it = std::find_if(report_.checks.begin(), report_.checks.end(),
                           [&](const StructuralCheck& c) { return c.name == name; });
    if (it == report_.checks.end()) {
      report_.checks.push_back({name, true, {}});
      it = report_.checks.end() - 1;
    }
    if (!condition && it->passed) {
      it->passed = false;
      it->detail = detail;
    }
  }

 private:
  StructuralReport& report_;
};

std::vector<int> components_without(const BalancedHypercube& g, int j) {
  const int n = g.dimension();
  std::vector<int> comp(g.vertex_count(), -1);
  int next = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<VertexId> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(v)) {
        if (comp[w] < 0 && edge_dimension(make_edge(v, w), n) != j) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace

bool StructuralReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const StructuralCheck& c) { return c.passed; });
}

std::string StructuralReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << "BH_" << n << ' ' << c.name << ": " << (c.passed ? "ok" : "FAILED " + c.detail) << '\n';
  }
  return out.str();
}

StructuralReport structural_suite(int n) {
  if (n < 1 || n > kDefaultMaxDimension) {
    throw CapacityError("structural suite supports 1 <= n <= " + std::to_string(kDefaultMaxDimension));
  }
  StructuralReport report;
  report.n = n;
  Recorder rec(report);
  const BalancedHypercube g(n);
  const auto V = static_cast<VertexId>(g.vertex_count());
  auto name = [n](VertexId v) { return format_vertex(v, n); };

  rec.expect("vertex count", V == vertex_count(n), std::to_string(V));
  for (VertexId v = 0; v < V; ++v) {
    const auto nb = g.neighbors(v);
    const std::set<VertexId> distinct(nb.begin(), nb.end());
    rec.expect("2n-regular", distinct.size() == static_cast<std::size_t>(2 * n) && !distinct.contains(v), name(v));
    for (VertexId w : nb) {
      const auto back = g.neighbors(w);
      rec.expect("symmetric", std::find(back.begin(), back.end(), v) != back.end(), name(v) + " " + name(w));
      rec.expect("bipartite by inner index", color_of(v) != color_of(w), name(v) + " " + name(w));
    }
  }

  std::map<std::vector<VertexId>, std::vector<VertexId>> by_neighborhood;
  for (VertexId v = 0; v < V; ++v) {
    std::vector<VertexId> nb(g.neighbors(v).begin(), g.neighbors(v).end());
    std::sort(nb.begin(), nb.end());
    by_neighborhood[nb].push_back(v);
  }
  for (const auto& [nb, group] : by_neighborhood) {
    const bool pair = group.size() == 2 && twin(group[0]) == group[1];
    rec.expect("twin uniqueness", pair, name(group.front()) + " shares its neighborhood with " +
                                            std::to_string(group.size() - 1) + " vertices");
  }

  std::vector<std::size_t> per_dimension(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) ++per_dimension[static_cast<std::size_t>(edge_dimension(e, n))];
  for (int j = 0; j < n; ++j) {
    rec.expect("|E_j| = 4^n", per_dimension[static_cast<std::size_t>(j)] == vertex_count(n),
               "dimension " + std::to_string(j) + " has " + std::to_string(per_dimension[static_cast<std::size_t>(j)]));
  }

  for (int j = 1; j < n; ++j) {
    const SubcubeFrame frame = split(n, j);
    const std::vector<int> comp = components_without(g, j);
    const int count = *std::max_element(comp.begin(), comp.end()) + 1;
    rec.expect("four components without E_j", count == 4, "j=" + std::to_string(j) + ": " + std::to_string(count));
    for (int i = 0; i < 4; ++i) {
      const auto& members = frame.members[static_cast<std::size_t>(i)];
      const bool one_component = std::all_of(members.begin(), members.end(),
                                             [&](VertexId v) { return comp[v] == comp[members.front()]; });
      rec.expect("components are the members a_j = i", one_component && members.size() == vertex_count(n - 1),
                 "j=" + std::to_string(j) + " i=" + std::to_string(i));
      // projection to BH_{n-1} is a bijection preserving adjacency both ways
      std::set<VertexId> image;
      for (VertexId v : members) {
        image.insert(frame.project(v));
        rec.expect("projection inverts lift", frame.lift(frame.project(v), i) == v, name(v));
        for (VertexId w : members) {
          if (w <= v) continue;
          rec.expect("members isomorphic to BH_{n-1}",
                     adjacent(v, w, n) == adjacent(frame.project(v), frame.project(w), n - 1), name(v) + " " + name(w));
        }
      }
      rec.expect("members isomorphic to BH_{n-1}", image.size() == vertex_count(n - 1), "image size");
    }
    for (const Edge& e : g.edges()) {
      if (edge_dimension(e, n) != j) continue;
      const VertexId white = color_of(e.u) == Color::white ? e.u : e.v;
      const VertexId black = white == e.u ? e.v : e.u;
      rec.expect("white extra neighbors one member up", (digit(white, j) + 1) % 4 == digit(black, j),
                 name(white) + " " + name(black));
    }
    for (int i = 0; i < 4; ++i) {
      for (const Edge& e : frame.crossing_edges[static_cast<std::size_t>(i)]) {
        const bool joins = std::set{digit(e.u, j), digit(e.v, j)} == std::set{i, (i + 1) % 4};
        rec.expect("crossing edges join members i and i+1", joins, format_edge(e, n));
      }
    }
  }
  return report;
}

}  // namespace bhcycle
