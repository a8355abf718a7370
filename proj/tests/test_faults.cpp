#include <doctest.h>

#include <algorithm>
#include <random>

#include "bhcycle/errors.hpp"
#include "bhcycle/faults.hpp"
#include "bhcycle/sweep.hpp"

using namespace bhcycle;

namespace {

VertexId V(std::vector<int> d) { return VertexAddress(std::move(d)).index(); }
Edge E(std::vector<int> a, std::vector<int> b) { return make_edge(V(std::move(a)), V(std::move(b))); }

bool has_kind(const ValidationReport& r, ViolationKind k) {
  return std::any_of(r.violations.begin(), r.violations.end(), [k](const Violation& v) { return v.kind == k; });
}

FaultScenario table1() { return {2, {V({0, 0})}, {E({0, 0}, {1, 1})}}; }

}  // namespace

TEST_CASE("validate budgets") {
  CHECK(validate(table1()).ok());

  const FaultScenario two_vertices{2, {V({0, 0}), V({1, 1})}, {}};
  CHECK(has_kind(validate(two_vertices), ViolationKind::vertex_budget));

  FaultScenario five_edges{3, {}, {}};
  for (VertexId v : {0u, 2u, 16u, 18u, 32u}) five_edges.faulty_edges.insert(make_edge(v, v + 1));
  REQUIRE(five_edges.edge_fault_count() == 5);
  CHECK(has_kind(validate(five_edges), ViolationKind::total_budget));
  five_edges.faulty_edges.erase(five_edges.faulty_edges.begin());
  CHECK(validate(five_edges).ok());
}

TEST_CASE("validate rejects malformed input") {
  CHECK(has_kind(validate(FaultScenario{0, {}, {}}), ViolationKind::invalid_dimension));
  CHECK(has_kind(validate(FaultScenario{2, {16}, {}}), ViolationKind::invalid_vertex));
  CHECK(has_kind(validate(FaultScenario{2, {}, {make_edge(0, 2)}}), ViolationKind::invalid_edge));
  CHECK(!validate(FaultScenario{2, {}, {make_edge(0, 2)}}).summary().empty());
}

TEST_CASE("validate inside a subcube uses its dimension") {
  const Subcube member = Subcube(3).member(2, 0);
  const FaultScenario s{3, {V({0, 0, 0}), V({1, 1, 0})}, {}};
  // two faults inside a BH_2 member exceed m - 1 = 1 there, but not n - 1 = 2 overall
  CHECK(validate(s).ok());
  CHECK(has_kind(validate(restrict_to(s, member), member), ViolationKind::vertex_budget));
  CHECK(validate(restrict_to(s, Subcube(3).member(2, 1)), Subcube(3).member(2, 1)).ok());
  // faults outside the view are not part of a scenario judged there
  CHECK(has_kind(validate(s, Subcube(3).member(2, 1)), ViolationKind::invalid_vertex));
}

TEST_CASE("tally examples") {
  const SubcubeTally t = tally(table1(), 1);
  CHECK(t.faulty_vertices == std::array<int, 4>{1, 0, 0, 0});
  CHECK(t.faulty_edges == std::array<int, 4>{0, 0, 0, 0});
  CHECK(t.faulty_crossing == 1);

  const FaultScenario inner{3, {}, {E({0, 0, 0}, {1, 0, 0})}};
  const SubcubeTally u = tally(inner, 2);
  CHECK(u.faulty_edges[0] == 1);
  CHECK(u.faulty_crossing == 0);

  const SubcubeTally z = tally(FaultScenario{2, {}, {}}, 1);
  CHECK(z.vertex_total() == 0);
  CHECK(z.edge_total() == 0);
  CHECK(z.faulty_crossing == 0);

  CHECK_THROWS_AS(tally(table1(), 0), UnsupportedSplit);
  CHECK_THROWS_AS(tally(table1(), 2), UnsupportedSplit);
}

TEST_CASE("rotated tally relabels members") {
  SubcubeTally t;
  t.faulty_vertices = {0, 1, 2, 3};
  t.faulty_edges = {4, 5, 6, 7};
  const SubcubeTally r = t.rotated(2);
  CHECK(r.faulty_vertices == std::array<int, 4>{2, 3, 0, 1});
  CHECK(r.faulty_edges == std::array<int, 4>{6, 7, 4, 5});
  CHECK(r.load(0) == 8);
  CHECK(r.load(5) == r.load(1));
}

TEST_CASE("split dimension choice") {
  const FaultScenario s{3,
                        {V({0, 0, 0})},
                        {E({1, 0, 0}, {2, 3, 0}), E({1, 2, 0}, {2, 1, 0}), E({1, 0, 0}, {2, 0, 3})}};
  REQUIRE(faulty_edges_per_dimension(s) == std::vector<int>{0, 2, 1});
  CHECK(choose_split_dimension(s) == 2);
  CHECK(choose_split_dimension(table1()) == 1);
  CHECK(!choose_split_dimension(FaultScenario{3, {}, {}}).has_value());
}

TEST_CASE("split dimension and tally over random scenarios") {
  for (int n = 2; n <= 4; ++n) {
    SweepConfig c;
    c.n = n;
    c.mode = SweepMode::random;
    c.samples = 300;
    c.seed = 11;
    for (const SweepCase& k : random_cases(c)) {
      const FaultScenario& s = k.scenario;
      REQUIRE(validate(s).ok());
      const auto per_dim = faulty_edges_per_dimension(s);
      const auto j = choose_split_dimension(s);
      if (s.vertex_fault_count() == 0) {
        CHECK(!j.has_value());
      } else {
        REQUIRE(j.has_value());
        CHECK(*j >= 1);
        CHECK(per_dim[static_cast<std::size_t>(*j)] <= 1);
      }
      for (int d = 1; d < n; ++d) {
        const SubcubeTally t = tally(s, d);
        CHECK(t.vertex_total() == s.vertex_fault_count());
        CHECK(t.edge_total() == s.edge_fault_count());
        CHECK(t.faulty_crossing == per_dim[static_cast<std::size_t>(d)]);
      }
    }
  }
}

TEST_CASE("restriction and overlays") {
  const FaultScenario s{3, {V({0, 0, 0}), V({0, 0, 1})}, {E({1, 0, 0}, {2, 0, 0}), E({1, 0, 0}, {2, 0, 3})}};
  const FaultScenario r = restrict_to(s, Subcube(3).member(2, 0));
  CHECK(r.faulty_vertices == std::set<VertexId>{V({0, 0, 0})});
  CHECK(r.faulty_edges == std::set<Edge>{E({1, 0, 0}, {2, 0, 0})});

  const FaultScenario w = without_vertex(s, V({0, 0, 0}));
  CHECK(w.vertex_fault_count() == 1);
  CHECK(s.vertex_fault_count() == 2);
  CHECK(without_edge(s, E({1, 0, 0}, {2, 0, 0})).edge_fault_count() == 1);

  CHECK(!s.edge_usable(V({0, 0, 0}), V({1, 0, 0})));
  CHECK(!s.edge_usable(V({1, 0, 0}), V({2, 0, 0})));
  CHECK(s.edge_usable(V({2, 0, 0}), V({3, 0, 0})));
}
