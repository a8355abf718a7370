#include "bhcycle/oracles.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "bhcycle/check.hpp"
#include "bhcycle/errors.hpp"
#include "bhcycle/search.hpp"

namespace bhcycle {
namespace {

struct ViewCounts {
  int m = 0;
  int fv = 0;
  int fe = 0;
};

ViewCounts counts_in(const Subcube& view, const FaultScenario& faults) {
  const FaultScenario r = restrict_to(faults, view);
  return {view.dimension(), r.vertex_fault_count(), r.edge_fault_count()};
}

std::string describe_call(const char* name, const Subcube& view, const FaultScenario& faults,
                          const std::string& args) {
  const FaultScenario r = restrict_to(faults, view);
  std::string out = std::string(name) + "(" + args + ") in " + view.describe() + ", F_v={";
  bool first = true;
  for (VertexId v : r.faulty_vertices) {
    out += (first ? "" : ",") + format_vertex(v, faults.n);
    first = false;
  }
  out += "}, F_e={";
  first = true;
  for (const Edge& e : r.faulty_edges) {
    out += (first ? "" : ",") + format_edge(e, faults.n);
    first = false;
  }
  return out + "}";
}

template <class W>
OracleResult<W> violation(std::string detail) {
  OracleResult<W> r;
  r.status = OracleStatus::hypothesis_violation;
  r.detail = std::move(detail);
  return r;
}

OracleStatus from_search(search::Status s) {
  switch (s) {
    case search::Status::found: return OracleStatus::found;
    case search::Status::exhausted: return OracleStatus::exhausted;
    case search::Status::infeasible: return OracleStatus::infeasible;
  }
  return OracleStatus::infeasible;
}

bool usable_vertex(const Subcube& view, const FaultScenario& faults, VertexId v) {
  return v < vertex_count(faults.n) && view.contains(v) && !faults.vertex_faulty(v);
}

// Checker-gated conversion of a search result into an oracle result.
OracleResult<PathWitness> finish_path(const search::SequenceResult& r, const Subcube& view, const FaultScenario& faults,
                                      VertexId x, VertexId y, int length, std::string detail) {
  OracleResult<PathWitness> out;
  out.status = from_search(r.status);
  out.nodes = r.nodes;
  out.detail = std::move(detail);
  if (out.found()) {
    out.witness.vertices = r.vertices;
    const CheckReport report =
        check_path_in(faults, view, out.witness, static_cast<std::size_t>(length), std::pair{x, y});
    if (!report.valid()) throw OracleFailure("search produced an invalid path: " + report.summary(), out.detail);
  }
  return out;
}

int local_dimension_size(const Subcube& view) { return static_cast<int>(view.size()); }

bool same_member(VertexId a, VertexId b, int j) { return digit(a, j) == digit(b, j); }

// Views from this dimension up are too large for reliable direct search; a
// Hamiltonian path is first assembled from the four members of a split.
constexpr int kSplitMinDimension = 4;
constexpr int kSplitExitTries = 3;

std::uint64_t member_allowance(SearchBudget b) { return std::min<std::uint64_t>(b.node_limit, 200'000); }

// The path runs around the members in crossing direction d, leaving each
// member at a vertex whose extra neighbors lie one member further. With d = +1
// every member is entered black and left white, so x is black; when x and y
// share a member, that member is covered by two disjoint paths x-p and q-y.
std::optional<std::vector<VertexId>> split_ham_path(const Subcube& view, const FaultScenario& faults, VertexId x,
                                                    VertexId y, SearchBudget budget, std::uint64_t& nodes) {
  const int d = -direction_of(x);
  const SearchBudget small{member_allowance(budget)};
  for (int j : view.free_dimensions()) {
    if (j == 0) continue;
    const int a = digit(x, j);
    const bool same = digit(y, j) == a;
    if (!same && digit(y, j) != ((a - d) & 3)) continue;
    auto member = [&](int k) { return view.member(j, (a + k * d) & 3); };
    auto exits = [&](const Subcube& mv, std::initializer_list<VertexId> avoid) {
      std::vector<VertexId> out;
      for (VertexId v : mv.vertices()) {
        if (static_cast<int>(out.size()) == kSplitExitTries) break;
        if (direction_of(v) != d || faults.vertex_faulty(v) || std::find(avoid.begin(), avoid.end(), v) != avoid.end()) {
          continue;
        }
        const auto nb = extra_neighbors(v, j);
        if (faults.edge_usable(v, nb[0]) || faults.edge_usable(v, nb[1])) out.push_back(v);
      }
      return out;
    };
    auto ham = [&](const Subcube& mv, VertexId from, VertexId to) -> std::optional<std::vector<VertexId>> {
      const auto r = ham_path(mv, faults, from, to, small);
      nodes += r.nodes;
      if (!r.found()) return std::nullopt;
      return r.witness.vertices;
    };

    std::vector<VertexId> out;
    // k: member index along the walk, from: last vertex of the walk so far
    auto step = [&](auto&& self, int k, VertexId from, VertexId p) -> bool {
      if (nodes > budget.node_limit) return false;
      const Subcube mv = member(k);
      for (VertexId e : extra_neighbors(from, j)) {
        if (!faults.edge_usable(from, e)) continue;
        const std::size_t mark = out.size();
        if (k == 3 && !same) {
          if (auto tail = ham(mv, e, y)) {
            out.insert(out.end(), tail->begin(), tail->end());
            return true;
          }
          continue;
        }
        for (VertexId t : exits(mv, {e})) {
          auto middle = ham(mv, e, t);
          if (!middle) continue;
          out.insert(out.end(), middle->begin(), middle->end());
          if (k < 3) {
            if (self(self, k + 1, t, p)) return true;
          } else {
            // back in the first member: cover it by x-p and q-y
            const Subcube first = member(0);
            for (VertexId q : extra_neighbors(t, j)) {
              if (q == x || q == y || q == p || !faults.edge_usable(t, q)) continue;
              const auto g = search::LocalGraph::build(first, faults);
              search::CoverRequest req;
              req.segments = {{g.local(x), g.local(p)}, {g.local(q), g.local(y)}};
              req.visit_count = g.usable_count;
              const search::CoverResult r = search::cover(g, req, small.node_limit);
              nodes += r.nodes;
              if (r.status != search::Status::found) continue;
              std::vector<VertexId> head;
              for (int l : r.paths[0]) head.push_back(g.ambient(l));
              out.insert(out.begin(), head.begin(), head.end());
              for (int l : r.paths[1]) out.push_back(g.ambient(l));
              return true;
            }
          }
          out.resize(mark);
        }
      }
      return false;
    };

    const Subcube first = member(0);
    for (VertexId p : exits(first, {x, y})) {
      out.clear();
      if (!same) {
        auto head = ham(first, x, p);
        if (!head) continue;
        out = *head;
      }
      if (step(step, 1, p, p)) return out;
    }
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::found: return "found";
    case OracleStatus::exhausted: return "exhausted";
    case OracleStatus::infeasible: return "infeasible";
    case OracleStatus::hypothesis_violation: return "hypothesis-violation";
  }
  return "unknown";
}

OracleResult<PathWitness> ham_path(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y,
                                   SearchBudget budget) {
  const std::string detail =
      describe_call("ham_path", view, faults, format_vertex(x, faults.n) + ", " + format_vertex(y, faults.n));
  const ViewCounts c = counts_in(view, faults);
  if (!usable_vertex(view, faults, x) || !usable_vertex(view, faults, y) || x == y) {
    return violation<PathWitness>(detail + ": end vertices must be distinct vertices of the view");
  }
  if (color_of(x) == color_of(y)) return violation<PathWitness>(detail + ": end vertices have the same color");
  if (c.fv != 0 || c.fe > 2 * c.m - 2) return violation<PathWitness>(detail + ": fault budget exceeded");
  const int length = local_dimension_size(view) - 1;
  if (c.m >= kSplitMinDimension) {
    std::uint64_t nodes = 0;
    if (auto assembled = split_ham_path(view, faults, x, y, budget, nodes)) {
      search::SequenceResult r{search::Status::found, std::move(*assembled), nodes};
      return finish_path(r, view, faults, x, y, length, detail);
    }
  }
  const auto g = search::LocalGraph::build(view, faults);
  return finish_path(search::path_of_length(g, x, y, length, budget.node_limit), view, faults, x, y, length, detail);
}

OracleResult<PathWitness> ham_path_adjacent(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y,
                                            SearchBudget budget) {
  if (!view.contains(x) || !view.contains(y) || !adjacent(x, y, faults.n) || !view.contains(make_edge(x, y))) {
    return violation<PathWitness>(describe_call("ham_path_adjacent", view, faults,
                                                format_vertex(x, faults.n) + ", " + format_vertex(y, faults.n)) +
                                  ": end vertices are not adjacent");
  }
  return ham_path(view, faults, x, y, budget);
}

OracleResult<CycleWitness> cycle_through_edge(const Subcube& view, const FaultScenario& faults, const Edge& e, int length,
                                              SearchBudget budget) {
  const std::string detail =
      describe_call("cycle_through_edge", view, faults, format_edge(e, faults.n) + ", L=" + std::to_string(length));
  const ViewCounts c = counts_in(view, faults);
  if (!view.contains(e) || !adjacent(e.u, e.v, faults.n) || !faults.edge_usable(e.u, e.v)) {
    return violation<CycleWitness>(detail + ": anchor edge is not a fault-free edge of the view");
  }
  if (length < 4 || length % 2 != 0) return violation<CycleWitness>(detail + ": length must be even and at least 4");
  const long full = static_cast<long>(view.size());
  const bool vertex_form = c.fe == 0 && c.fv <= c.m - 1 && length <= full - 2 * c.fv;
  const bool edge_form = c.fv == 0 && c.fe <= 2 * c.m - 3 && length <= full;
  if (!vertex_form && !edge_form) return violation<CycleWitness>(detail + ": fault budget exceeded");

  const auto g = search::LocalGraph::build(view, faults);
  const search::SequenceResult r = search::cycle_through(g, e, length, budget.node_limit);
  OracleResult<CycleWitness> out;
  out.status = from_search(r.status);
  out.nodes = r.nodes;
  out.detail = detail;
  if (out.found()) {
    out.witness.vertices = r.vertices;
    const CheckReport report = check_cycle_in(faults, view, out.witness, static_cast<std::size_t>(length));
    if (!report.valid() || r.vertices[0] != e.u || r.vertices[1] != e.v) {
      throw OracleFailure("search produced an invalid cycle: " + report.summary(), detail);
    }
  }
  return out;
}

OracleResult<PathWitness> bipan_path(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y, int length,
                                     SearchBudget budget) {
  const std::string detail = describe_call("bipan_path", view, faults,
                                           format_vertex(x, faults.n) + ", " + format_vertex(y, faults.n) +
                                               ", L=" + std::to_string(length));
  const ViewCounts c = counts_in(view, faults);
  if (!usable_vertex(view, faults, x) || !usable_vertex(view, faults, y) || x == y) {
    return violation<PathWitness>(detail + ": end vertices must be distinct vertices of the view");
  }
  if (c.fv != 0 || c.fe != 0) return violation<PathWitness>(detail + ": the view must be fault-free");
  const bool opposite = color_of(x) != color_of(y);
  if (length < 1 || length > static_cast<int>(view.size()) - 1 || (length % 2 == 1) != opposite) {
    return violation<PathWitness>(detail + ": length is not admissible for these end vertices");
  }
  const auto g = search::LocalGraph::build(view, faults);
  return finish_path(search::path_of_length(g, x, y, length, budget.node_limit), view, faults, x, y, length, detail);
}

OracleResult<PathWitness> hyper_ham_path(const Subcube& view, const FaultScenario& faults, VertexId x, VertexId y,
                                         VertexId deleted, SearchBudget budget) {
  const std::string detail = describe_call("hyper_ham_path", view, faults,
                                           format_vertex(x, faults.n) + ", " + format_vertex(y, faults.n) +
                                               ", deleted " + format_vertex(deleted, faults.n));
  const ViewCounts c = counts_in(view, faults);
  if (!usable_vertex(view, faults, x) || !usable_vertex(view, faults, y) || !view.contains(deleted) || x == y) {
    return violation<PathWitness>(detail + ": vertices must lie in the view and end vertices must differ");
  }
  if (color_of(x) != color_of(y) || color_of(deleted) == color_of(x)) {
    return violation<PathWitness>(detail + ": end vertices must share a color and the deleted vertex has the other");
  }
  if (c.fv != 0 || c.fe != 0) return violation<PathWitness>(detail + ": the view must be fault-free");
  FaultScenario with_deleted = faults;
  with_deleted.faulty_vertices.insert(deleted);
  const auto g = search::LocalGraph::build(view, with_deleted);
  const int length = static_cast<int>(view.size()) - 2;
  return finish_path(search::path_of_length(g, x, y, length, budget.node_limit), view, with_deleted, x, y, length,
                     detail);
}

OracleResult<PathPair> two_disjoint_spanning_paths(const Subcube& view, const FaultScenario& faults, VertexId x,
                                                   VertexId y, VertexId u, VertexId v, SearchBudget budget) {
  const std::string detail =
      describe_call("two_disjoint_spanning_paths", view, faults,
                    format_vertex(x, faults.n) + "-" + format_vertex(y, faults.n) + ", " + format_vertex(u, faults.n) +
                        "-" + format_vertex(v, faults.n));
  OracleResult<PathPair> out;
  out.detail = detail;
  const ViewCounts c = counts_in(view, faults);
  for (VertexId t : {x, y, u, v}) {
    if (!usable_vertex(view, faults, t)) {
      out.status = OracleStatus::hypothesis_violation;
      out.detail += ": end vertices must lie in the view";
      return out;
    }
  }
  if (x == u || y == v || color_of(x) != color_of(u) || color_of(y) != color_of(v) || color_of(x) == color_of(y)) {
    out.status = OracleStatus::hypothesis_violation;
    out.detail += ": need x != u in one color class and y != v in the other";
    return out;
  }
  if (c.fv != 0 || c.fe != 0) {
    out.status = OracleStatus::hypothesis_violation;
    out.detail += ": the view must be fault-free";
    return out;
  }
  const auto g = search::LocalGraph::build(view, faults);
  search::CoverRequest req;
  req.segments = {{g.local(x), g.local(y)}, {g.local(u), g.local(v)}};
  req.visit_count = g.usable_count;
  const search::CoverResult r = search::cover(g, req, budget.node_limit);
  out.status = from_search(r.status);
  out.nodes = r.nodes;
  if (!out.found()) return out;
  for (int l : r.paths[0]) out.witness.first.vertices.push_back(g.ambient(l));
  for (int l : r.paths[1]) out.witness.second.vertices.push_back(g.ambient(l));
  const auto& p = out.witness.first;
  const auto& q = out.witness.second;
  const CheckReport rp = check_path_in(faults, view, p, p.length(), std::pair{x, y});
  const CheckReport rq = check_path_in(faults, view, q, q.length(), std::pair{u, v});
  std::set<VertexId> all(p.vertices.begin(), p.vertices.end());
  all.insert(q.vertices.begin(), q.vertices.end());
  if (!rp.valid() || !rq.valid() || all.size() != view.size() || p.vertices.size() + q.vertices.size() != view.size()) {
    throw OracleFailure("search produced an invalid path pair: " + rp.summary() + "; " + rq.summary(), detail);
  }
  return out;
}

std::vector<CycleWitness> eight_cycles_one_edge_per_subcube(const Subcube& view, const FaultScenario& faults, int j,
                                                            const Edge& e) {
  std::vector<CycleWitness> found;
  const auto& free = view.free_dimensions();
  if (j < 1 || std::find(free.begin(), free.end(), j) == free.end() || !view.contains(e) ||
      !adjacent(e.u, e.v, faults.n)) {
    return found;
  }
  if (faults.vertex_faulty(e.u) || faults.vertex_faulty(e.v)) return found;
  const bool anchor_is_member = same_member(e.u, e.v, j);

  std::vector<VertexId> cycle{e.u, e.v};
  std::array<int, 4> member_edges{};
  if (anchor_is_member) ++member_edges[static_cast<std::size_t>(digit(e.u, j))];

  auto fresh = [&](VertexId w) {
    return !faults.vertex_faulty(w) && std::find(cycle.begin(), cycle.end(), w) == cycle.end();
  };

  // Extends the alternating walk; `member_next` says which edge type follows.
  auto extend = [&](auto&& self, bool member_next) -> void {
    const VertexId cur = cycle.back();
    if (cycle.size() == 8) {
      const VertexId first = cycle.front();
      if (member_next != same_member(cur, first, j)) return;
      if (!adjacent(cur, first, faults.n) || faults.edge_faulty(cur, first)) return;
      if (member_next && member_edges[static_cast<std::size_t>(digit(cur, j))] != 0) return;
      found.push_back({cycle});
      return;
    }
    if (member_next) {
      auto& slot = member_edges[static_cast<std::size_t>(digit(cur, j))];
      if (slot != 0) return;
      for (VertexId w : view.neighbors(cur)) {
        if (!same_member(cur, w, j) || !fresh(w) || faults.edge_faulty(cur, w)) continue;
        ++slot;
        cycle.push_back(w);
        self(self, false);
        cycle.pop_back();
        --slot;
      }
    } else {
      for (VertexId w : extra_neighbors(cur, j)) {
        if (!fresh(w) || faults.edge_faulty(cur, w)) continue;
        cycle.push_back(w);
        self(self, true);
        cycle.pop_back();
      }
    }
  };
  extend(extend, !anchor_is_member);
  return found;
}

OracleResult<CycleWitness> eight_cycle_one_edge_per_subcube(const Subcube& view, const FaultScenario& faults, int j,
                                                            const Edge& e) {
  OracleResult<CycleWitness> out;
  out.detail = describe_call("eight_cycle_one_edge_per_subcube", view, faults,
                             "j=" + std::to_string(j) + ", " + format_edge(e, faults.n));
  const auto& free = view.free_dimensions();
  if (j < 1 || std::find(free.begin(), free.end(), j) == free.end() || !view.contains(e) ||
      !adjacent(e.u, e.v, faults.n)) {
    out.status = OracleStatus::hypothesis_violation;
    out.detail += ": need a free split dimension j >= 1 and an edge of the view";
    return out;
  }
  std::vector<CycleWitness> all = eight_cycles_one_edge_per_subcube(view, faults, j, e);
  out.nodes = all.size();
  if (all.empty()) return out;
  out.status = OracleStatus::found;
  out.witness = std::move(all.front());
  // The anchor is exempt from the fault check, so verify the 7-path around it.
  PathWitness rest{{out.witness.vertices.begin() + 1, out.witness.vertices.end()}};
  rest.vertices.push_back(out.witness.vertices.front());
  const CheckReport report = check_path_in(faults, view, rest, 7, std::pair{e.v, e.u});
  if (!report.valid()) throw OracleFailure("enumeration produced an invalid 8-cycle: " + report.summary(), out.detail);
  return out;
}

OracleResult<std::vector<CycleWitness>> edge_disjoint_eight_cycles(const Subcube& view, const FaultScenario& faults,
                                                                   int j, std::span<const Edge> edges,
                                                                   SearchBudget budget) {
  OracleResult<std::vector<CycleWitness>> out;
  std::string args = "j=" + std::to_string(j);
  for (const Edge& e : edges) args += ", " + format_edge(e, faults.n);
  out.detail = describe_call("edge_disjoint_eight_cycles", view, faults, args);

  const auto& free = view.free_dimensions();
  bool ok = j >= 1 && std::find(free.begin(), free.end(), j) != free.end() && edges.size() >= 2;
  for (const Edge& e : edges) {
    ok = ok && view.contains(e) && adjacent(e.u, e.v, faults.n) && same_member(e.u, e.v, j) &&
         same_member(e.u, edges[0].u, j) && edge_dimension(e, faults.n) == edge_dimension(edges[0], faults.n);
  }
  if (!ok) {
    out.status = OracleStatus::hypothesis_violation;
    out.detail += ": need k >= 2 edges of one dimension inside one member";
    return out;
  }

  std::vector<std::vector<CycleWitness>> options;
  for (const Edge& e : edges) options.push_back(eight_cycles_one_edge_per_subcube(view, faults, j, e));

  auto cycle_edges = [](const CycleWitness& c) {
    std::set<Edge> s;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      s.insert(make_edge(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]));
    }
    return s;
  };
  auto compatible = [&](std::size_t a, const CycleWitness& ca, std::size_t b, const CycleWitness& cb) {
    const auto ea = cycle_edges(ca);
    for (const Edge& x : cycle_edges(cb)) {
      if (ea.contains(x)) return false;
    }
    std::set<VertexId> allowed;
    for (VertexId t : {edges[a].u, edges[a].v}) {
      if (t == edges[b].u || t == edges[b].v) allowed.insert(t);
    }
    for (VertexId x : ca.vertices) {
      if (std::find(cb.vertices.begin(), cb.vertices.end(), x) != cb.vertices.end() && !allowed.contains(x)) {
        return false;
      }
    }
    return true;
  };

  std::vector<CycleWitness> chosen;
  bool exhausted = false;
  auto pick = [&](auto&& self, std::size_t k) -> bool {
    if (k == options.size()) return true;
    for (const CycleWitness& c : options[k]) {
      if (++out.nodes > budget.node_limit) {
        exhausted = true;
        return false;
      }
      bool fits = true;
      for (std::size_t i = 0; i < chosen.size() && fits; ++i) fits = compatible(i, chosen[i], k, c);
      if (!fits) continue;
      chosen.push_back(c);
      if (self(self, k + 1)) return true;
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  };
  if (pick(pick, 0)) {
    out.status = OracleStatus::found;
    out.witness = std::move(chosen);
  } else {
    out.status = exhausted ? OracleStatus::exhausted : OracleStatus::infeasible;
  }
  return out;
}

}  // namespace bhcycle
