#include <doctest.h>

#include <set>

#include "bhcycle/check.hpp"
#include "bhcycle/search.hpp"

using namespace bhcycle;
using namespace bhcycle::search;

namespace {

VertexId V(std::vector<int> d) { return VertexAddress(std::move(d)).index(); }

constexpr std::uint64_t kLimit = 1'000'000;

}  // namespace

TEST_CASE("local graph drops faulty vertices and edges") {
  const FaultScenario s{2, {V({0, 0})}, {make_edge(V({1, 0}), V({2, 0}))}};
  const LocalGraph g = LocalGraph::build(Subcube(2), s);
  CHECK(g.size() == 16);
  CHECK(!g.usable[static_cast<std::size_t>(g.local(V({0, 0})))]);
  CHECK(g.usable_count == std::array<int, 2>{7, 8});
  const auto& a = g.adj[static_cast<std::size_t>(g.local(V({1, 0})))];
  CHECK(a.size() == 2);  // lost (0,0) and (2,0)
  for (std::size_t v = 0; v < g.adj.size(); ++v) {
    for (int w : g.adj[v]) {
      CHECK(g.usable[static_cast<std::size_t>(w)]);
      CHECK(s.edge_usable(g.ambient(static_cast<int>(v)), g.ambient(w)));
    }
  }

  const VertexId blocked[] = {V({3, 3})};
  const Edge removed[] = {make_edge(V({2, 1}), V({3, 1}))};
  const LocalGraph h = LocalGraph::build(Subcube(2), FaultScenario{2, {}, {}}, blocked, removed);
  CHECK(h.usable_count == std::array<int, 2>{8, 7});
  CHECK(h.adj[static_cast<std::size_t>(h.local(V({2, 1})))].size() == 3);
}

TEST_CASE("paths of every feasible length in BH_1") {
  const LocalGraph g = LocalGraph::build(Subcube(1), FaultScenario{1, {}, {}});
  auto p = path_of_length(g, V({0}), V({1}), 3, kLimit);
  REQUIRE(p.status == Status::found);
  CHECK(p.vertices == std::vector<VertexId>{V({0}), V({3}), V({2}), V({1})});
  CHECK(path_of_length(g, V({0}), V({1}), 1, kLimit).vertices.size() == 2);
  CHECK(path_of_length(g, V({0}), V({1}), 2, kLimit).status == Status::infeasible);
  CHECK(path_of_length(g, V({0}), V({2}), 2, kLimit).status == Status::found);
}

TEST_CASE("Hamiltonian paths in BH_3 are checked witnesses") {
  const FaultScenario s{3, {}, {make_edge(V({0, 0, 0}), V({1, 0, 0})), make_edge(V({2, 1, 1}), V({3, 1, 1}))}};
  const LocalGraph g = LocalGraph::build(Subcube(3), s);
  for (VertexId y : {V({1, 0, 0}), V({3, 2, 1}), V({1, 3, 3})}) {
    const auto r = path_of_length(g, V({0, 0, 0}), y, 63, kLimit);
    REQUIRE(r.status == Status::found);
    CHECK(check_path(s, PathWitness{r.vertices}, 63, std::pair{V({0, 0, 0}), y}).valid());
  }
}

TEST_CASE("color counting refutes same-color Hamiltonian paths") {
  const LocalGraph g = LocalGraph::build(Subcube(2), FaultScenario{2, {}, {}});
  const auto r = path_of_length(g, V({0, 0}), V({2, 0}), 15, kLimit);
  CHECK(r.status == Status::infeasible);
  CHECK(r.nodes <= 1);
}

TEST_CASE("cycles through an edge") {
  const FaultScenario s{2, {V({2, 2})}, {}};
  const LocalGraph g = LocalGraph::build(Subcube(2), s);
  const Edge e = make_edge(V({0, 0}), V({1, 0}));
  for (int len = 4; len <= 14; len += 2) {
    const auto r = cycle_through(g, e, len, kLimit);
    REQUIRE(r.status == Status::found);
    CHECK(r.vertices[0] == e.u);
    CHECK(r.vertices[1] == e.v);
    CHECK(check_cycle(s, CycleWitness{r.vertices}, static_cast<std::size_t>(len)).valid());
  }
  CHECK(cycle_through(g, e, 16, kLimit).status == Status::infeasible);
  const auto any = cycle_of_length(g, 14, kLimit);
  REQUIRE(any.status == Status::found);
  CHECK(check_cycle(s, CycleWitness{any.vertices}, 14).valid());
}

TEST_CASE("two-segment cover in BH_2") {
  const LocalGraph g = LocalGraph::build(Subcube(2), FaultScenario{2, {}, {}});
  CoverRequest req;
  req.segments = {{g.local(V({0, 0})), g.local(V({1, 0}))}, {g.local(V({2, 0})), g.local(V({3, 0}))}};
  req.visit_count = {8, 8};
  const CoverResult r = cover(g, req, kLimit);
  REQUIRE(r.status == Status::found);
  REQUIRE(r.paths.size() == 2);
  std::set<int> seen;
  for (const auto& p : r.paths) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      CHECK(adjacent(g.ambient(p[i]), g.ambient(p[i + 1]), 2));
    }
    seen.insert(p.begin(), p.end());
  }
  CHECK(seen.size() == 16);
  CHECK(r.paths[0].front() == req.segments[0].source);
  CHECK(r.paths[1].back() == req.segments[1].target);
}

TEST_CASE("malformed cover requests are infeasible") {
  const LocalGraph g = LocalGraph::build(Subcube(2), FaultScenario{2, {}, {}});
  CoverRequest shared;
  shared.segments = {{0, 1}, {1, 2}};
  shared.visit_count = {8, 8};
  CHECK(cover(g, shared, kLimit).status == Status::infeasible);
  CoverRequest too_many;
  too_many.segments = {{0, 1}};
  too_many.visit_count = {9, 8};
  CHECK(cover(g, too_many, kLimit).status == Status::infeasible);
  CHECK(cover(g, CoverRequest{}, kLimit).status == Status::infeasible);
}

TEST_CASE("a tiny node limit exhausts instead of refuting") {
  const LocalGraph g = LocalGraph::build(Subcube(3), FaultScenario{3, {}, {}});
  const auto r = path_of_length(g, V({0, 0, 0}), V({1, 2, 3}), 63, 5);
  CHECK(r.status == Status::exhausted);
}

TEST_CASE("deterministic output") {
  const FaultScenario s{3, {V({1, 1, 1})}, {make_edge(V({0, 0, 0}), V({1, 0, 0}))}};
  const LocalGraph g = LocalGraph::build(Subcube(3), s);
  const auto a = cycle_of_length(g, 62, kLimit);
  const auto b = cycle_of_length(g, 62, kLimit);
  REQUIRE(a.status == Status::found);
  CHECK(a.vertices == b.vertices);
  CHECK(a.nodes == b.nodes);
}
