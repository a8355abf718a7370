#include "bhcycle/embedding.hpp"

#include <algorithm>
#include <map>

#include "bhcycle/check.hpp"
#include "bhcycle/errors.hpp"
#include "bhcycle/search.hpp"

namespace bhcycle {
namespace {

using Seq = std::vector<VertexId>;

constexpr int pow4(int m) { return 1 << (2 * m); }

struct Counts {
  int fv = 0;
  int fe = 0;
};

Counts counts_in(const FaultScenario& s, const Subcube& view) {
  const FaultScenario r = restrict_to(s, view);
  return {r.vertex_fault_count(), r.edge_fault_count()};
}

std::string describe_scenario(const FaultScenario& s, const Subcube& view) {
  const FaultScenario r = restrict_to(s, view);
  std::string out = view.describe() + " F_v={";
  for (auto it = r.faulty_vertices.begin(); it != r.faulty_vertices.end(); ++it) {
    out += (it == r.faulty_vertices.begin() ? "" : ",") + format_vertex(*it, s.n);
  }
  out += "} F_e={";
  for (auto it = r.faulty_edges.begin(); it != r.faulty_edges.end(); ++it) {
    out += (it == r.faulty_edges.begin() ? "" : ",") + format_edge(*it, s.n);
  }
  return out + "}";
}

template <class W>
W need(OracleResult<W> r) {
  if (!r.found()) throw OracleFailure(std::string("oracle returned ") + to_string(r.status), r.detail);
  return std::move(r.witness);
}

bool contains(const Seq& seq, VertexId v) { return std::find(seq.begin(), seq.end(), v) != seq.end(); }

std::size_t index_of(const Seq& seq, VertexId v) {
  const auto it = std::find(seq.begin(), seq.end(), v);
  if (it == seq.end()) throw OracleFailure("internal: vertex missing from sequence", std::to_string(v));
  return static_cast<std::size_t>(it - seq.begin());
}

// Cycle c re-listed to start at v and continue with its cycle neighbor next.
Seq orient(const Seq& c, VertexId v, VertexId next) {
  const std::size_t n = c.size();
  const std::size_t i = index_of(c, v);
  Seq out;
  out.reserve(n);
  if (c[(i + 1) % n] == next) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(c[(i + k) % n]);
  } else if (c[(i + n - 1) % n] == next) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(c[(i + n - k) % n]);
  } else {
    throw OracleFailure("internal: not consecutive on cycle", std::to_string(v) + "," + std::to_string(next));
  }
  return out;
}

std::array<VertexId, 2> cycle_neighbors(const Seq& c, VertexId v) {
  const std::size_t n = c.size();
  const std::size_t i = index_of(c, v);
  return {c[(i + n - 1) % n], c[(i + 1) % n]};
}

// Cycle c minus its edge (from, to), as a path from `from` to `to`.
Seq open_cycle(const Seq& c, VertexId from, VertexId to) {
  const auto nb = cycle_neighbors(c, from);
  if (nb[0] != to && nb[1] != to) {
    throw OracleFailure("internal: not consecutive on cycle", std::to_string(from) + "," + std::to_string(to));
  }
  return orient(c, from, nb[0] == to ? nb[1] : nb[0]);
}

bool on_cycle(const Seq& c, const Edge& e) {
  if (!contains(c, e.u)) return false;
  const auto nb = cycle_neighbors(c, e.u);
  return nb[0] == e.v || nb[1] == e.v;
}

Seq reversed(Seq s) {
  std::reverse(s.begin(), s.end());
  return s;
}

void append(Seq& out, const Seq& part) { out.insert(out.end(), part.begin(), part.end()); }

// Consecutive pairs (a, b) of a path or cycle, ordered by the pigeonhole rule:
// dimensions by decreasing occurrence count, then traversal order.
std::vector<std::pair<VertexId, VertexId>> pigeonhole_order(const Seq& seq, bool closed, int n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  const std::size_t hops = closed ? seq.size() : seq.size() - 1;
  for (std::size_t i = 0; i < hops; ++i) pairs.emplace_back(seq[i], seq[(i + 1) % seq.size()]);
  std::map<int, int> occurrences;
  for (const auto& [a, b] : pairs) ++occurrences[edge_dimension(make_edge(a, b), n)];
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
    const int dp = edge_dimension(make_edge(p.first, p.second), n);
    const int dq = edge_dimension(make_edge(q.first, q.second), n);
    if (occurrences[dp] != occurrences[dq]) return occurrences[dp] > occurrences[dq];
    return dp < dq;
  });
  return pairs;
}

std::vector<std::pair<VertexId, VertexId>> cycle_order(const Seq& c) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (std::size_t i = 0; i < c.size(); ++i) pairs.emplace_back(c[i], c[(i + 1) % c.size()]);
  return pairs;
}

struct MemberPair {
  Seq first;
  Seq second;
};

class Engine {
 public:
  explicit Engine(const EmbeddingOptions& options) : budget_(options.budget) {}

  ConstructionTrace trace;

  Seq cycle(const Subcube& view, const FaultScenario& s, int depth);
  Seq path(const Subcube& view, const FaultScenario& s, VertexId x, VertexId y, int depth);

 private:
  std::size_t record(Branch b, int depth, const Subcube& view, const FaultScenario& s, int j = 0, int rotation = 0);
  void rewind(std::size_t mark) { trace.entries.resize(mark); }

  Seq no_faulty_vertices(const Subcube& view, const FaultScenario& s, int depth);
  Seq base_n2(const Subcube& view, const FaultScenario& s, int depth);
  Seq split_cases(const Subcube& view, const FaultScenario& s, int depth, int j);

  Seq expand_with_paths(const Subcube& view, const FaultScenario& s, int depth, int j, int rot, Branch b);
  Seq relax_vertex(const Subcube& view, const FaultScenario& s, int depth, int j, int rot, Branch b);
  Seq short_member_expansion(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0);
  Seq route_around(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0, VertexId w);
  Seq case_1_3_1_1(const Subcube& view, const FaultScenario& s, int depth, int j, int rot, int k);
  Seq case_1_3_1_2(const Subcube& view, const FaultScenario& s, int depth, int j, int rot);
  Seq case_2_1(const Subcube& view, const FaultScenario& s, int depth, int j, int rot);
  Seq case_3(const Subcube& view, const FaultScenario& s, int depth, int j, int rot);
  std::optional<Seq> case_3_subcase(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0,
                                    VertexId w, const Edge& fe, Branch& chosen);
  Seq bipan_expansion(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0,
                      const std::vector<std::pair<VertexId, VertexId>>& anchors);

  std::optional<Seq> chain(const Subcube& view, const FaultScenario& s, int j, VertexId from, VertexId to,
                           const std::vector<int>& members);
  std::optional<std::vector<MemberPair>> double_chain(const Subcube& view, const FaultScenario& s, int j,
                                                      VertexId from1, VertexId from2, std::optional<VertexId> to1,
                                                      std::optional<VertexId> to2, const std::vector<int>& members);

  Seq l31_case_1(const Subcube& view, const FaultScenario& s, int depth, int j, VertexId x, VertexId y);
  Seq l31_case_2(const Subcube& view, const FaultScenario& s, int depth, int j, VertexId x, VertexId y);

  void check_level(const FaultScenario& s, const Subcube& view, const Seq& seq, bool closed, std::size_t length,
                   const char* what);

  SearchBudget budget_;
};

std::size_t Engine::record(Branch b, int depth, const Subcube& view, const FaultScenario& s, int j, int rotation) {
  TraceEntry e;
  e.branch = b;
  e.depth = depth;
  e.dimension = view.dimension();
  const Counts c = counts_in(s, view);
  e.vertex_faults = c.fv;
  e.edge_faults = c.fe;
  e.split_dimension = j;
  e.rotation = rotation;
  if (j > 0) e.tally = tally(s, view, j).rotated(rotation);
  trace.entries.push_back(e);
  return trace.entries.size() - 1;
}

void Engine::check_level(const FaultScenario& s, const Subcube& view, const Seq& seq, bool closed, std::size_t length,
                         const char* what) {
  const CheckReport r = closed ? check_cycle_in(s, view, CycleWitness{seq}, length)
                               : check_path_in(s, view, PathWitness{seq}, length);
  if (!r.valid()) {
    throw OracleFailure(std::string("assembled ") + what + " is invalid: " + r.summary(), describe_scenario(s, view));
  }
}

Seq Engine::cycle(const Subcube& view, const FaultScenario& s, int depth) {
  const int m = view.dimension();
  const ValidationReport report = validate(restrict_to(s, view), view);
  if (m < 2 || !report.ok()) {
    throw HypothesisViolation("cycle construction needs m >= 2 and a valid fault budget: " + report.summary());
  }
  const Counts c = counts_in(s, view);
  Seq out;
  if (c.fv == 0) {
    out = no_faulty_vertices(view, s, depth);
  } else if (m == 2) {
    out = base_n2(view, s, depth);
  } else {
    out = split_cases(view, s, depth, *choose_split_dimension(s, view));
  }
  check_level(s, view, out, true, static_cast<std::size_t>(pow4(m) - 2 * c.fv), "cycle");
  return out;
}

Seq Engine::no_faulty_vertices(const Subcube& view, const FaultScenario& s, int depth) {
  record(Branch::thm_no_faulty_vertices, depth, view, s);
  std::optional<OracleFailure> last;
  for (VertexId u : view.vertices()) {
    for (VertexId v : view.neighbors(u)) {
      if (v < u || s.edge_faulty(u, v)) continue;
      try {
        return need(ham_path_adjacent(view, s, u, v, budget_)).vertices;
      } catch (const OracleFailure& e) {
        last = e;
      }
    }
  }
  throw last.value_or(OracleFailure("no fault-free edge", describe_scenario(s, view)));
}

Seq Engine::base_n2(const Subcube& view, const FaultScenario& s, int depth) {
  record(Branch::thm_base_n2, depth, view, s);
  const Counts c = counts_in(s, view);
  const int length = pow4(2) - 2 * c.fv;
  if (c.fe == 0) {
    std::optional<OracleFailure> last;
    for (VertexId u : view.vertices()) {
      for (VertexId v : view.neighbors(u)) {
        if (v < u || !s.edge_usable(u, v)) continue;
        try {
          return need(cycle_through_edge(view, s, make_edge(u, v), length, budget_)).vertices;
        } catch (const OracleFailure& e) {
          last = e;
        }
      }
    }
    throw last.value_or(OracleFailure("no fault-free edge", describe_scenario(s, view)));
  }
  const auto g = search::LocalGraph::build(view, s);
  const auto r = search::cycle_of_length(g, length, budget_.node_limit);
  if (r.status != search::Status::found) {
    throw OracleFailure("no cycle of length " + std::to_string(length) + " found", describe_scenario(s, view));
  }
  return r.vertices;
}

Seq Engine::split_cases(const Subcube& view, const FaultScenario& s, int depth, int j) {
  const int m = view.dimension();
  const SubcubeTally t = tally(s, view, j);
  int heaviest = 0;
  for (int i = 1; i < 4; ++i) {
    if (t.load(i) > t.load(heaviest)) heaviest = i;
  }
  const int max_load = t.load(heaviest);
  const int fv_heavy = t.faulty_vertices[static_cast<std::size_t>(heaviest)];

  if (max_load == 2 * m - 2) return case_3(view, s, depth, j, heaviest);
  if (max_load == 2 * m - 3) {
    if (fv_heavy <= m - 2) return case_2_1(view, s, depth, j, heaviest);
    return relax_vertex(view, s, depth, j, heaviest, Branch::thm_case_2_2);
  }
  std::vector<int> heavy;
  for (int i = 0; i < 4; ++i) {
    if (t.load(i) >= m - 1) heavy.push_back(i);
  }
  if (heavy.empty()) return expand_with_paths(view, s, depth, j, heaviest, Branch::thm_case_1_1);
  if (heavy.size() == 1) {
    if (fv_heavy <= m - 2) return expand_with_paths(view, s, depth, j, heaviest, Branch::thm_case_1_2_1);
    return relax_vertex(view, s, depth, j, heaviest, Branch::thm_case_1_2_2);
  }
  const int h0 = heavy[0];
  const int h1 = heavy[1];
  if (t.faulty_vertices[static_cast<std::size_t>(h0)] == m - 1) {
    return relax_vertex(view, s, depth, j, h0, Branch::thm_case_1_3_2);
  }
  if (t.faulty_vertices[static_cast<std::size_t>(h1)] == m - 1) {
    return relax_vertex(view, s, depth, j, h1, Branch::thm_case_1_3_2);
  }
  const int k = (h1 - h0) & 3;
  if (k == 2) return case_1_3_1_2(view, s, depth, j, h0);
  return case_1_3_1_1(view, s, depth, j, h0, k);
}

// Subcases 1.1 and 1.2.1: a cycle in member 0, one of its edges expanded
// through an 8-cycle, the other member edges replaced by adjacent-vertex paths.
Seq Engine::expand_with_paths(const Subcube& view, const FaultScenario& s, int depth, int j, int rot, Branch b) {
  record(b, depth, view, s, j, rot);
  const Seq c0 = cycle(view.member(j, rot), s, depth + 1);
  const std::size_t mark = trace.entries.size();
  std::optional<OracleFailure> last;
  for (const auto& [a, b0] : pigeonhole_order(c0, true, s.n)) {
    for (const CycleWitness& d : eight_cycles_one_edge_per_subcube(view, s, j, make_edge(a, b0))) {
      const Seq ring = orient(d.vertices, a, b0);
      try {
        Seq out = open_cycle(c0, b0, a);
        Seq tail;
        for (std::size_t k = 7; k >= 3; k -= 2) {
          append(tail, path(view.member(j, digit(ring[k], j)), s, ring[k], ring[k - 1], depth + 1));
        }
        // out runs b0 -> a; continue from a across ring[7] ... ring[2] back to b0.
        append(out, tail);
        return out;
      } catch (const OracleFailure& e) {
        last = e;
        rewind(mark);
      }
    }
  }
  throw last.value_or(OracleFailure("no fault-free 8-cycle on member cycle", describe_scenario(s, view)));
}

Seq Engine::relax_vertex(const Subcube& view, const FaultScenario& s, int depth, int j, int rot, Branch b) {
  record(b, depth, view, s, j, rot);
  const Subcube m0 = view.member(j, rot);
  const std::size_t mark = trace.entries.size();
  std::optional<OracleFailure> last;
  const FaultScenario local = restrict_to(s, m0);
  for (VertexId w : local.faulty_vertices) {
    try {
      const Seq c0 = cycle(m0, without_vertex(s, w), depth + 1);
      if (!contains(c0, w)) return short_member_expansion(view, s, j, rot, c0);
      return route_around(view, s, j, rot, c0, w);
    } catch (const OracleFailure& e) {
      last = e;
      rewind(mark);
    }
  }
  throw last.value_or(OracleFailure("no faulty vertex to relax", describe_scenario(s, view)));
}

// C_0 avoids every fault but is two vertices too long: two members get
// Hamiltonian paths and the lightest one a cycle two short of Hamiltonian.
Seq Engine::short_member_expansion(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0) {
  const int m = view.dimension();
  const SubcubeTally t = tally(s, view, j);
  std::vector<int> order{3, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return t.load(rot + a) < t.load(rot + b); });
  std::optional<OracleFailure> last;
  for (const auto& [a, b] : cycle_order(c0)) {
    for (const CycleWitness& d : eight_cycles_one_edge_per_subcube(view, s, j, make_edge(a, b))) {
      for (int short_member : order) {
        const int phys_short = (rot + short_member) & 3;
        try {
          Seq out;
          const Seq& ring = d.vertices;
          append(out, open_cycle(c0, ring[0], ring[1]));
          for (std::size_t k = 2; k < 8; k += 2) {
            const Subcube mv = view.member(j, digit(ring[k], j));
            if (digit(ring[k], j) == phys_short) {
              const auto c = need(cycle_through_edge(mv, s, make_edge(ring[k], ring[k + 1]), pow4(m - 1) - 2, budget_));
              append(out, open_cycle(c.vertices, ring[k], ring[k + 1]));
            } else {
              append(out, need(ham_path(mv, s, ring[k], ring[k + 1], budget_)).vertices);
            }
          }
          return out;
        } catch (const OracleFailure& e) {
          last = e;
        }
      }
    }
  }
  throw last.value_or(OracleFailure("no fault-free 8-cycle on member cycle", describe_scenario(s, view)));
}

// C_0 passes through the relaxed faulty vertex w: drop w and one of its cycle
// neighbors and close the remaining path through the other three members.
Seq Engine::route_around(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0, VertexId w) {
  const auto nb = cycle_neighbors(c0, w);
  for (int pick = 0; pick < 2; ++pick) {
    const VertexId a = nb[static_cast<std::size_t>(pick)];
    const VertexId b = nb[static_cast<std::size_t>(1 - pick)];
    const Seq ring = orient(c0, w, b);  // w, b, c, ..., a
    const Seq p0(ring.begin() + 2, ring.end());
    const int d = direction_of(a);
    const std::vector<int> members{(rot + d) & 3, (rot + 2 * d) & 3, (rot + 3 * d) & 3};
    if (auto tail = chain(view, s, j, a, ring[2], members)) {
      Seq out = p0;
      append(out, *tail);
      return out;
    }
  }
  throw OracleFailure("no chain of Hamiltonian paths around the relaxed vertex", describe_scenario(s, view));
}

// Hamiltonian paths through consecutive members, entering from `from` and
// leaving towards `to` over fault-free crossing edges.
std::optional<Seq> Engine::chain(const Subcube& view, const FaultScenario& s, int j, VertexId from, VertexId to,
                                 const std::vector<int>& members) {
  constexpr int kExitTries = 3;
  Seq out;
  auto step = [&](auto&& self, std::size_t k, VertexId prev) -> bool {
    const int mk = members[k];
    const Subcube mv = view.member(j, mk);
    const bool last = k + 1 == members.size();
    std::vector<VertexId> exits;
    if (last) {
      for (VertexId x : extra_neighbors(to, j)) {
        if (digit(x, j) == mk && s.edge_usable(x, to)) exits.push_back(x);
      }
    } else {
      for (VertexId x : mv.vertices()) {
        if (static_cast<int>(exits.size()) == kExitTries) break;
        if (s.vertex_faulty(x) || digit(extra_neighbors(x, j)[0], j) != members[k + 1]) continue;
        exits.push_back(x);
      }
    }
    for (VertexId e : extra_neighbors(prev, j)) {
      if (digit(e, j) != mk || !s.edge_usable(prev, e)) continue;
      for (VertexId x : exits) {
        if (x == e) continue;
        const auto r = ham_path(mv, s, e, x, budget_);
        if (!r.found()) continue;
        const std::size_t mark = out.size();
        append(out, r.witness.vertices);
        if (last || self(self, k + 1, x)) return true;
        out.resize(mark);
      }
    }
    return false;
  };
  if (step(step, 0, from)) return out;
  return std::nullopt;
}

// Two vertex-disjoint chains through the same members; inside each member the
// two paths cover every vertex. Without targets the last member joins the two
// chains by a path missing one vertex.
std::optional<std::vector<MemberPair>> Engine::double_chain(const Subcube& view, const FaultScenario& s, int j,
                                                            VertexId from1, VertexId from2,
                                                            std::optional<VertexId> to1, std::optional<VertexId> to2,
                                                            const std::vector<int>& members) {
  constexpr int kPairTries = 4;
  constexpr int kDeletedTries = 4;
  std::vector<MemberPair> out;
  auto targets = [&](VertexId to, int mk) {
    std::vector<VertexId> xs;
    for (VertexId x : extra_neighbors(to, j)) {
      if (digit(x, j) == mk && s.edge_usable(x, to)) xs.push_back(x);
    }
    return xs;
  };
  auto entries = [&](VertexId prev, int mk) {
    std::vector<VertexId> es;
    for (VertexId e : extra_neighbors(prev, j)) {
      if (digit(e, j) == mk && s.edge_usable(prev, e)) es.push_back(e);
    }
    return es;
  };
  auto step = [&](auto&& self, std::size_t k, VertexId prev1, VertexId prev2) -> bool {
    const int mk = members[k];
    const Subcube mv = view.member(j, mk);
    const bool last = k + 1 == members.size();
    for (VertexId e1 : entries(prev1, mk)) {
      for (VertexId e2 : entries(prev2, mk)) {
        if (e1 == e2) continue;
        if (last && !to1) {
          int tries = 0;
          for (VertexId del : mv.vertices()) {
            if (color_of(del) == color_of(e1) || tries == kDeletedTries) continue;
            ++tries;
            const auto r = hyper_ham_path(mv, s, e1, e2, del, budget_);
            if (!r.found()) continue;
            out.push_back({r.witness.vertices, {}});
            return true;
          }
          continue;
        }
        std::vector<std::pair<VertexId, VertexId>> exit_pairs;
        if (last) {
          for (VertexId x1 : targets(*to1, mk)) {
            for (VertexId x2 : targets(*to2, mk)) {
              if (x1 != x2) exit_pairs.emplace_back(x1, x2);
            }
          }
        } else {
          std::vector<VertexId> cand;
          for (VertexId x : mv.vertices()) {
            if (!s.vertex_faulty(x) && digit(extra_neighbors(x, j)[0], j) == members[k + 1]) cand.push_back(x);
          }
          for (std::size_t a = 0; a < cand.size() && static_cast<int>(exit_pairs.size()) < kPairTries; ++a) {
            for (std::size_t b = a + 1; b < cand.size() && static_cast<int>(exit_pairs.size()) < kPairTries; ++b) {
              exit_pairs.emplace_back(cand[a], cand[b]);
            }
          }
        }
        for (const auto& [x1, x2] : exit_pairs) {
          const auto r = two_disjoint_spanning_paths(mv, s, e1, x1, e2, x2, budget_);
          if (!r.found()) continue;
          out.push_back({r.witness.first.vertices, r.witness.second.vertices});
          if (last || self(self, k + 1, x1, x2)) return true;
          out.pop_back();
        }
      }
    }
    return false;
  };
  if (step(step, 0, from1, from2)) return out;
  return std::nullopt;
}

Seq Engine::case_1_3_1_1(const Subcube& view, const FaultScenario& s, int depth, int j, int rot, int k) {
  record(Branch::thm_case_1_3_1_1, depth, view, s, j, rot);
  const int d = k == 1 ? 1 : -1;
  const Seq c0 = cycle(view.member(j, rot), s, depth + 1);
  const Seq ck = cycle(view.member(j, (rot + k) & 3), s, depth + 1);
  const std::vector<int> members{(rot - d) & 3, (rot - 2 * d) & 3};

  for (VertexId u0 : c0) {
    if (direction_of(u0) != d) continue;
    for (VertexId v1 : extra_neighbors(u0, j)) {
      if (!s.edge_usable(u0, v1) || !contains(ck, v1)) continue;
      for (VertexId v0 : cycle_neighbors(c0, u0)) {
        for (VertexId u1 : cycle_neighbors(ck, v1)) {
          if (auto mid = chain(view, s, j, v0, u1, members)) {
            Seq out = open_cycle(c0, u0, v0);
            append(out, *mid);
            append(out, open_cycle(ck, u1, v1));
            return out;
          }
        }
      }
    }
  }

  // No white vertex of C_0 reaches C_k directly: rebuild member k's cycle
  // through a chosen extra neighbor instead.
  const Subcube mk = view.member(j, (rot + k) & 3);
  const auto gk = search::LocalGraph::build(mk, s);
  for (VertexId u0 : c0) {
    if (direction_of(u0) != d) continue;
    for (VertexId v1 : extra_neighbors(u0, j)) {
      if (!s.edge_usable(u0, v1)) continue;
      for (VertexId t : mk.neighbors(v1)) {
        if (!s.edge_usable(v1, t)) continue;
        const auto r = search::cycle_through(gk, make_edge(v1, t), static_cast<int>(ck.size()), budget_.node_limit);
        if (r.status != search::Status::found) continue;
        for (VertexId v0 : cycle_neighbors(c0, u0)) {
          for (VertexId u1 : cycle_neighbors(r.vertices, v1)) {
            if (auto mid = chain(view, s, j, v0, u1, members)) {
              Seq out = open_cycle(c0, u0, v0);
              append(out, *mid);
              append(out, open_cycle(r.vertices, u1, v1));
              return out;
            }
          }
        }
      }
    }
  }
  throw OracleFailure("no connection between the two heavy member cycles", describe_scenario(s, view));
}

Seq Engine::case_1_3_1_2(const Subcube& view, const FaultScenario& s, int depth, int j, int rot) {
  record(Branch::thm_case_1_3_1_2, depth, view, s, j, rot);
  const Seq c0 = cycle(view.member(j, rot), s, depth + 1);
  const Seq c2 = cycle(view.member(j, (rot + 2) & 3), s, depth + 1);
  for (auto [p, q] : cycle_order(c0)) {
    if (direction_of(p) != 1) std::swap(p, q);
    for (auto [r, t] : cycle_order(c2)) {
      if (direction_of(r) != 1) std::swap(r, t);
      const auto via1 = chain(view, s, j, p, t, {(rot + 1) & 3});
      if (!via1) continue;
      const auto via3 = chain(view, s, j, r, q, {(rot + 3) & 3});
      if (!via3) continue;
      Seq out = open_cycle(c0, p, q);
      append(out, reversed(*via3));
      append(out, open_cycle(c2, r, t));
      append(out, reversed(*via1));
      return out;
    }
  }
  throw OracleFailure("no connection between opposite member cycles", describe_scenario(s, view));
}

Seq Engine::case_2_1(const Subcube& view, const FaultScenario& s, int depth, int j, int rot) {
  record(Branch::thm_case_2_1, depth, view, s, j, rot);
  const int m = view.dimension();
  const Subcube m0 = view.member(j, rot);
  const FaultScenario local = restrict_to(s, m0);
  std::vector<Edge> candidates(local.faulty_edges.begin(), local.faulty_edges.end());
  std::stable_partition(candidates.begin(), candidates.end(),
                        [&](const Edge& e) { return !s.vertex_faulty(e.u) && !s.vertex_faulty(e.v); });
  const std::size_t mark = trace.entries.size();
  std::optional<OracleFailure> last;
  for (const Edge& fe : candidates) {
    try {
      const FaultScenario relaxed = without_edge(s, fe);
      const Seq c0 = cycle(m0, relaxed, depth + 1);
      std::vector<std::pair<VertexId, VertexId>> anchors;
      if (on_cycle(c0, fe)) {
        anchors.emplace_back(fe.u, fe.v);
      } else {
        anchors = cycle_order(c0);
      }
      for (const auto& [a, b] : anchors) {
        for (const CycleWitness& d : eight_cycles_one_edge_per_subcube(view, relaxed, j, make_edge(a, b))) {
          try {
            const Seq& ring = d.vertices;
            Seq out = open_cycle(c0, ring[0], ring[1]);
            for (std::size_t k = 2; k < 8; k += 2) {
              const Subcube mv = view.member(j, digit(ring[k], j));
              const int length = pow4(m - 1) - 2 * counts_in(s, mv).fv;
              const auto c = need(cycle_through_edge(mv, s, make_edge(ring[k], ring[k + 1]), length, budget_));
              append(out, open_cycle(c.vertices, ring[k], ring[k + 1]));
            }
            return out;
          } catch (const OracleFailure& e) {
            last = e;
          }
        }
      }
    } catch (const OracleFailure& e) {
      last = e;
    }
    rewind(mark);
  }
  throw last.value_or(OracleFailure("no faulty edge to relax", describe_scenario(s, view)));
}

Seq Engine::case_3(const Subcube& view, const FaultScenario& s, int depth, int j, int rot) {
  const std::size_t slot = record(Branch::thm_case_3_1, depth, view, s, j, rot);
  const Subcube m0 = view.member(j, rot);
  const FaultScenario local = restrict_to(s, m0);
  const std::size_t mark = trace.entries.size();
  std::optional<OracleFailure> last;
  for (VertexId w : local.faulty_vertices) {
    std::vector<Edge> edges(local.faulty_edges.begin(), local.faulty_edges.end());
    std::stable_partition(edges.begin(), edges.end(), [&](const Edge& e) { return e.u != w && e.v != w; });
    for (const Edge& fe : edges) {
      try {
        const Seq c0 = cycle(m0, without_edge(without_vertex(s, w), fe), depth + 1);
        Branch chosen = Branch::thm_case_3_1;
        if (auto out = case_3_subcase(view, s, j, rot, c0, w, fe, chosen)) {
          trace.entries[slot].branch = chosen;
          return *out;
        }
      } catch (const OracleFailure& e) {
        last = e;
      }
      rewind(mark);
    }
  }
  throw last.value_or(OracleFailure("no relaxation of member 0 succeeded", describe_scenario(s, view)));
}

std::optional<Seq> Engine::case_3_subcase(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0,
                                          VertexId w, const Edge& fe, Branch& chosen) {
  const bool w_on = contains(c0, w);
  const bool e_on = on_cycle(c0, fe);
  const bool e_at_w = fe.u == w || fe.v == w;

  if (!w_on) {
    if (!e_on) {
      chosen = Branch::thm_case_3_1;
      return bipan_expansion(view, s, j, rot, c0, cycle_order(c0));
    }
    chosen = Branch::thm_case_3_2;
    return bipan_expansion(view, s, j, rot, c0, {{fe.u, fe.v}});
  }

  const auto nb = cycle_neighbors(c0, w);
  if (!e_on || e_at_w) {
    chosen = Branch::thm_case_3_3;
    const VertexId a0 = nb[0];
    const VertexId b0 = nb[1];
    const int d = direction_of(a0);
    const std::vector<int> members{(rot + d) & 3, (rot + 2 * d) & 3, (rot + 3 * d) & 3};
    const auto pairs = double_chain(view, s, j, a0, b0, std::nullopt, std::nullopt, members);
    if (!pairs) return std::nullopt;
    const Seq ring = orient(c0, w, b0);  // w, b0, ..., a0
    Seq out(ring.begin() + 1, ring.end());
    append(out, (*pairs)[0].first);
    append(out, (*pairs)[1].first);
    append(out, (*pairs)[2].first);
    append(out, reversed((*pairs)[1].second));
    append(out, reversed((*pairs)[0].second));
    return out;
  }

  // The relaxed edge lies on C_0 away from w.
  for (int pick = 0; pick < 2; ++pick) {
    const VertexId b0 = nb[static_cast<std::size_t>(pick)];
    if (fe.u == b0 || fe.v == b0) {
      chosen = Branch::thm_case_3_4_1;
      const VertexId a0 = nb[static_cast<std::size_t>(1 - pick)];
      const Seq ring = orient(c0, w, b0);  // w, b0, v0, ..., a0
      const int d = direction_of(a0);
      const auto mid = chain(view, s, j, a0, ring[2], {(rot + d) & 3, (rot + 2 * d) & 3, (rot + 3 * d) & 3});
      if (!mid) return std::nullopt;
      Seq out(ring.begin() + 2, ring.end());
      append(out, *mid);
      return out;
    }
  }

  chosen = Branch::thm_case_3_4_2;
  for (int pick = 0; pick < 2; ++pick) {
    const VertexId b0 = nb[static_cast<std::size_t>(pick)];
    const VertexId a0 = nb[static_cast<std::size_t>(1 - pick)];
    const Seq ring = orient(c0, w, b0);  // w, b0, c0, ..., p, q, ..., a0
    const std::size_t ip = std::min(index_of(ring, fe.u), index_of(ring, fe.v));
    const VertexId p = ring[ip];
    const VertexId q = ring[ip + 1];
    const int d = direction_of(a0);
    if (direction_of(p) != d) continue;
    const std::vector<int> members{(rot + d) & 3, (rot + 2 * d) & 3, (rot + 3 * d) & 3};
    const auto pairs = double_chain(view, s, j, a0, p, ring[2], q, members);
    if (!pairs) continue;
    Seq out(ring.begin() + 2, ring.begin() + static_cast<std::ptrdiff_t>(ip) + 1);  // c0 ... p
    for (const auto& mp : *pairs) append(out, mp.second);
    out.insert(out.end(), ring.begin() + static_cast<std::ptrdiff_t>(ip) + 1, ring.end());  // q ... a0
    for (const auto& mp : *pairs) append(out, mp.first);
    return out;
  }
  return std::nullopt;
}

// Subcases 3.1 and 3.2: 8-cycle expansion with Hamiltonian paths in two
// members and a path three short of Hamiltonian in the third.
Seq Engine::bipan_expansion(const Subcube& view, const FaultScenario& s, int j, int rot, const Seq& c0,
                            const std::vector<std::pair<VertexId, VertexId>>& anchors) {
  const int m = view.dimension();
  std::optional<OracleFailure> last;
  for (const auto& [a, b] : anchors) {
    for (const CycleWitness& d : eight_cycles_one_edge_per_subcube(view, s, j, make_edge(a, b))) {
      for (int short_member : {3, 2, 1}) {
        const int phys_short = (rot + short_member) & 3;
        try {
          const Seq& ring = d.vertices;
          Seq out = open_cycle(c0, ring[0], ring[1]);
          for (std::size_t k = 2; k < 8; k += 2) {
            const Subcube mv = view.member(j, digit(ring[k], j));
            if (digit(ring[k], j) == phys_short) {
              append(out, need(bipan_path(mv, s, ring[k], ring[k + 1], pow4(m - 1) - 3, budget_)).vertices);
            } else {
              append(out, need(ham_path(mv, s, ring[k], ring[k + 1], budget_)).vertices);
            }
          }
          return out;
        } catch (const OracleFailure& e) {
          last = e;
        }
      }
    }
  }
  throw last.value_or(OracleFailure("no fault-free 8-cycle on member cycle", describe_scenario(s, view)));
}

Seq Engine::path(const Subcube& view, const FaultScenario& s, VertexId x, VertexId y, int depth) {
  const int m = view.dimension();
  const Counts c = counts_in(s, view);
  if (m < 1 || c.fv + c.fe > m - 1 || !view.contains(x) || !view.contains(y) || !adjacent(x, y, s.n) ||
      s.vertex_faulty(x) || s.vertex_faulty(y)) {
    throw HypothesisViolation("adjacent path construction needs fault-free adjacent ends and at most m-1 faults in " +
                              describe_scenario(s, view));
  }
  const int length = pow4(m) - 2 * c.fv - 1;
  Seq out;
  if (m == 1) {
    record(Branch::l31_base_n1, depth, view, s);
    const int step = (digit(y, 0) - digit(x, 0)) & 3;
    for (int k = 0; k < 4; ++k) out.push_back(with_digit(x, 0, digit(x, 0) - k * step));
  } else if (m == 2) {
    record(Branch::l31_base_n2, depth, view, s);
    if (c.fe == 0) {
      out = open_cycle(need(cycle_through_edge(view, s, make_edge(x, y), length + 1, budget_)).vertices, x, y);
    } else {
      out = need(ham_path_adjacent(view, s, x, y, budget_)).vertices;
    }
  } else {
    std::optional<int> split;
    for (int j : view.free_dimensions()) {
      if (j == 0) continue;
      const SubcubeTally t = tally(s, view, j);
      int heaviest = 0;
      for (int i = 0; i < 4; ++i) heaviest = std::max(heaviest, t.load(i));
      if (heaviest <= m - 2) {
        split = j;
        break;
      }
    }
    if (split && digit(x, *split) == digit(y, *split)) {
      out = l31_case_1(view, s, depth, *split, x, y);
    } else if (split) {
      out = l31_case_2(view, s, depth, *split, x, y);
    } else if (c.fe == 0) {
      // every split leaves some member with m-1 faulty vertices
      record(Branch::l31_no_faulty_edges, depth, view, s);
      out = open_cycle(need(cycle_through_edge(view, s, make_edge(x, y), length + 1, budget_)).vertices, x, y);
    } else {
      record(Branch::l31_direct_search, depth, view, s);
      const auto g = search::LocalGraph::build(view, s);
      const auto r = search::path_of_length(g, x, y, length, budget_.node_limit);
      if (r.status != search::Status::found) {
        throw OracleFailure("direct path search failed", describe_scenario(s, view));
      }
      out = r.vertices;
    }
  }
  check_level(s, view, out, false, static_cast<std::size_t>(length), "path");
  if (out.front() != x || out.back() != y) throw OracleFailure("assembled path has wrong ends", describe_scenario(s, view));
  return out;
}

Seq Engine::l31_case_1(const Subcube& view, const FaultScenario& s, int depth, int j, VertexId x, VertexId y) {
  const int rot = digit(x, j);
  record(Branch::l31_case_1, depth, view, s, j, rot);
  const Seq p0 = path(view.member(j, rot), s, x, y, depth + 1);
  const std::size_t mark = trace.entries.size();
  std::optional<OracleFailure> last;
  for (const auto& [a, b] : pigeonhole_order(p0, false, s.n)) {
    for (const CycleWitness& d : eight_cycles_one_edge_per_subcube(view, s, j, make_edge(a, b))) {
      const Seq ring = orient(d.vertices, a, b);  // a, b, x2, ..., x7
      try {
        Seq insert;
        for (std::size_t k = 7; k >= 3; k -= 2) {
          append(insert, path(view.member(j, digit(ring[k], j)), s, ring[k], ring[k - 1], depth + 1));
        }
        const std::size_t ia = index_of(p0, a);
        Seq out(p0.begin(), p0.begin() + static_cast<std::ptrdiff_t>(ia) + 1);
        append(out, insert);
        out.insert(out.end(), p0.begin() + static_cast<std::ptrdiff_t>(ia) + 1, p0.end());
        return out;
      } catch (const OracleFailure& e) {
        last = e;
        rewind(mark);
      }
    }
  }
  throw last.value_or(OracleFailure("no fault-free 8-cycle on member path", describe_scenario(s, view)));
}

Seq Engine::l31_case_2(const Subcube& view, const FaultScenario& s, int depth, int j, VertexId x, VertexId y) {
  const int rot = digit(x, j);
  record(Branch::l31_case_2, depth, view, s, j, rot);
  const std::size_t mark = trace.entries.size();
  std::optional<OracleFailure> last;
  for (const CycleWitness& d : eight_cycles_one_edge_per_subcube(view, s, j, make_edge(x, y))) {
    const Seq ring = orient(d.vertices, x, y);  // x, y, d2, ..., d7
    try {
      Seq out;
      for (std::size_t k = 0; k < 8; k += 2) {
        // member edges are (d7, x), (d5, d6), (d3, d4), (y, d2), walked backwards from x
        const VertexId from = ring[(8 - k) % 8];
        const VertexId to = ring[7 - k];
        append(out, path(view.member(j, digit(from, j)), s, from, to, depth + 1));
      }
      return out;
    } catch (const OracleFailure& e) {
      last = e;
      rewind(mark);
    }
  }
  throw last.value_or(OracleFailure("no fault-free 7-path joining the crossing edge", describe_scenario(s, view)));
}

VertexId addr(int a0, int a1) { return static_cast<VertexId>(a0 + 4 * a1); }

}  // namespace

const char* label(Branch b) {
  switch (b) {
    case Branch::thm_base_n2: return "Thm3/BaseN2";
    case Branch::thm_no_faulty_vertices: return "Thm3/NoFaultyVertices";
    case Branch::thm_case_1_1: return "Thm3/Case1.1";
    case Branch::thm_case_1_2_1: return "Thm3/Case1.2.1";
    case Branch::thm_case_1_2_2: return "Thm3/Case1.2.2";
    case Branch::thm_case_1_3_1_1: return "Thm3/Case1.3.1.1";
    case Branch::thm_case_1_3_1_2: return "Thm3/Case1.3.1.2";
    case Branch::thm_case_1_3_2: return "Thm3/Case1.3.2";
    case Branch::thm_case_2_1: return "Thm3/Case2.1";
    case Branch::thm_case_2_2: return "Thm3/Case2.2";
    case Branch::thm_case_3_1: return "Thm3/Case3.1";
    case Branch::thm_case_3_2: return "Thm3/Case3.2";
    case Branch::thm_case_3_3: return "Thm3/Case3.3";
    case Branch::thm_case_3_4_1: return "Thm3/Case3.4.1";
    case Branch::thm_case_3_4_2: return "Thm3/Case3.4.2";
    case Branch::l31_base_n1: return "L31/BaseN1";
    case Branch::l31_base_n2: return "L31/BaseN2";
    case Branch::l31_no_faulty_edges: return "L31/NoFaultyEdges";
    case Branch::l31_case_1: return "L31/Case1";
    case Branch::l31_case_2: return "L31/Case2";
    case Branch::l31_direct_search: return "L31/DirectSearch";
  }
  return "unknown";
}

std::optional<Branch> branch_from_label(std::string_view text) {
  for (Branch b : kAllBranches) {
    if (text == label(b)) return b;
  }
  return std::nullopt;
}

bool is_theorem_branch(Branch b) { return std::string_view(label(b)).starts_with("Thm3/"); }

std::vector<std::string> ConstructionTrace::labels() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.emplace_back(label(e.branch));
  return out;
}

bool ConstructionTrace::contains(Branch b) const {
  return std::any_of(entries.begin(), entries.end(), [&](const TraceEntry& e) { return e.branch == b; });
}

CycleConstruction longest_fault_free_cycle(const FaultScenario& s, const EmbeddingOptions& options) {
  check_dimension(s.n);
  if (s.n < 2) throw HypothesisViolation("cycle construction needs n >= 2");
  const ValidationReport report = validate(s);
  if (!report.ok()) throw HypothesisViolation(report.summary());
  Engine engine(options);
  const Subcube whole(s.n);
  CycleConstruction out{{engine.cycle(whole, s, 0)}, std::move(engine.trace)};
  const CheckReport check =
      check_cycle(s, out.cycle, static_cast<std::size_t>(pow4(s.n) - 2 * s.vertex_fault_count()));
  if (!check.valid()) throw OracleFailure("constructed cycle failed verification: " + check.summary(), describe_scenario(s, whole));
  return out;
}

PathConstruction adjacent_fault_free_path(const FaultScenario& s, VertexId x, VertexId y,
                                          const EmbeddingOptions& options) {
  check_dimension(s.n);
  for (const Violation& v : validate(s).violations) {
    if (v.kind != ViolationKind::vertex_budget && v.kind != ViolationKind::total_budget) {
      throw HypothesisViolation(v.message);
    }
  }
  check_vertex(x, s.n);
  check_vertex(y, s.n);
  if (!adjacent(x, y, s.n)) throw HypothesisViolation(format_vertex(x, s.n) + " and " + format_vertex(y, s.n) + " are not adjacent");
  if (s.vertex_faulty(x) || s.vertex_faulty(y)) throw HypothesisViolation("end vertices must be fault-free");
  if (s.fault_count() > s.n - 1) {
    throw HypothesisViolation("|F_v|+|F_e| = " + std::to_string(s.fault_count()) + " > n-1 = " + std::to_string(s.n - 1));
  }
  Engine engine(options);
  const Subcube whole(s.n);
  PathConstruction out{{engine.path(whole, s, x, y, 0)}, std::move(engine.trace)};
  const CheckReport check = check_path(s, out.path, static_cast<std::size_t>(pow4(s.n) - 2 * s.vertex_fault_count() - 1),
                                       std::pair{x, y});
  if (!check.valid()) throw OracleFailure("constructed path failed verification: " + check.summary(), describe_scenario(s, whole));
  return out;
}

Edge table1_faulty_edge() { return make_edge(addr(0, 0), addr(1, 1)); }

const std::vector<Table1Row>& table1_catalog() {
  using P = std::pair<int, int>;
  auto row = [](P v, P w, std::initializer_list<P> seq) {
    Table1Row r{{addr(v.first, v.second), addr(w.first, w.second)}, {}};
    for (const auto& [a0, a1] : seq) r.cycle.vertices.push_back(addr(a0, a1));
    return r;
  };
  static const std::vector<Table1Row> rows = {
      row({0, 0}, {1, 0}, {{3, 0}, {2, 0}, {3, 1}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {0, 2}, {1, 3}, {2, 3}, {3, 3}, {0, 3}}),
      row({3, 0}, {2, 0}, {{0, 0}, {1, 0}, {0, 3}, {3, 3}, {2, 3}, {1, 3}, {0, 2}, {3, 2}, {2, 2}, {1, 2}, {2, 1}, {1, 1}, {0, 1}, {3, 1}}),
      row({0, 1}, {1, 1}, {{0, 0}, {1, 0}, {2, 0}, {3, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {0, 2}, {1, 3}, {2, 3}, {3, 3}, {0, 3}, {3, 0}}),
      row({3, 1}, {2, 1}, {{0, 0}, {1, 0}, {2, 0}, {1, 1}, {0, 1}, {3, 2}, {2, 2}, {1, 2}, {0, 2}, {1, 3}, {2, 3}, {3, 3}, {0, 3}, {3, 0}}),
      row({0, 3}, {1, 3}, {{0, 0}, {3, 0}, {2, 0}, {1, 0}, {2, 3}, {3, 3}, {2, 2}, {3, 2}, {0, 2}, {1, 2}, {2, 1}, {1, 1}, {0, 1}, {3, 1}}),
      row({3, 3}, {2, 3}, {{0, 0}, {3, 0}, {2, 0}, {1, 0}, {0, 3}, {1, 3}, {0, 2}, {3, 2}, {2, 2}, {1, 2}, {2, 1}, {1, 1}, {0, 1}, {3, 1}}),
      row({0, 2}, {1, 2}, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 3}, {3, 3}, {2, 3}, {1, 3}, {2, 2}, {3, 2}, {0, 1}, {1, 1}, {2, 1}, {3, 1}}),
      row({3, 2}, {2, 2}, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 3}, {3, 3}, {2, 3}, {1, 3}, {0, 2}, {1, 2}, {2, 1}, {1, 1}, {0, 1}, {3, 1}}),
  };
  return rows;
}

FaultScenario table1_scenario(int row, int which) {
  const auto& rows = table1_catalog();
  if (row < 0 || row >= static_cast<int>(rows.size()) || which < 0 || which > 1) {
    throw Error("table row " + std::to_string(row) + "/" + std::to_string(which) + " does not exist");
  }
  FaultScenario s;
  s.n = 2;
  s.faulty_vertices.insert(rows[static_cast<std::size_t>(row)].faulty_vertices[static_cast<std::size_t>(which)]);
  s.faulty_edges.insert(table1_faulty_edge());
  return s;
}

}  // namespace bhcycle
