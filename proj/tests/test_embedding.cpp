#include <doctest.h>

#include <fstream>
#include <set>

#include <json.hpp>

#include "bhcycle/check.hpp"
#include "bhcycle/embedding.hpp"
#include "bhcycle/errors.hpp"
#include "bhcycle/json_io.hpp"
#include "bhcycle/sweep.hpp"

using namespace bhcycle;

namespace {

VertexId V(std::vector<int> d) { return VertexAddress(std::move(d)).index(); }
Edge E(std::vector<int> a, std::vector<int> b) { return make_edge(V(std::move(a)), V(std::move(b))); }

std::vector<VertexId> seq(std::initializer_list<std::vector<int>> list) {
  std::vector<VertexId> out;
  for (const auto& d : list) out.push_back(V(d));
  return out;
}

std::size_t full(const FaultScenario& s) { return vertex_count(s.n) - 2 * static_cast<std::size_t>(s.vertex_fault_count()); }

int heavy_members(const SubcubeTally& t, int m) {
  int k = 0;
  for (int i = 0; i < 4; ++i) k += t.load(i) >= m - 1;
  return k;
}

// The case conditions on the (rotated) per-member fault counts, restated.
void check_guard(const TraceEntry& e) {
  const int m = e.dimension;
  const SubcubeTally& t = e.tally;
  CAPTURE(label(e.branch));
  CAPTURE(m);
  CAPTURE(e.depth);
  switch (e.branch) {
    case Branch::thm_base_n2:
      CHECK(m == 2);
      CHECK(e.vertex_faults >= 1);
      break;
    case Branch::thm_no_faulty_vertices:
      CHECK(e.vertex_faults == 0);
      break;
    case Branch::thm_case_3_1:
    case Branch::thm_case_3_2:
    case Branch::thm_case_3_3:
    case Branch::thm_case_3_4_1:
    case Branch::thm_case_3_4_2:
      CHECK(t.load(0) == 2 * m - 2);
      CHECK(t.load(1) + t.load(2) + t.load(3) == 0);
      CHECK(t.faulty_crossing == 0);
      break;
    case Branch::thm_case_2_1:
      CHECK(t.load(0) == 2 * m - 3);
      CHECK(t.faulty_vertices[0] <= m - 2);
      break;
    case Branch::thm_case_2_2:
      CHECK(t.load(0) == 2 * m - 3);
      CHECK(t.faulty_vertices[0] == m - 1);
      break;
    case Branch::thm_case_1_1:
      for (int i = 0; i < 4; ++i) CHECK(t.load(i) <= m - 2);
      break;
    case Branch::thm_case_1_2_1:
    case Branch::thm_case_1_2_2:
      for (int i = 0; i < 4; ++i) CHECK(t.load(i) <= 2 * m - 4);
      CHECK(heavy_members(t, m) == 1);
      CHECK(t.load(0) >= m - 1);
      if (e.branch == Branch::thm_case_1_2_1) {
        CHECK(t.faulty_vertices[0] <= m - 2);
      } else {
        CHECK(t.faulty_vertices[0] == m - 1);
      }
      break;
    case Branch::thm_case_1_3_1_1:
    case Branch::thm_case_1_3_1_2:
    case Branch::thm_case_1_3_2: {
      for (int i = 0; i < 4; ++i) CHECK(t.load(i) <= 2 * m - 4);
      CHECK(heavy_members(t, m) == 2);
      CHECK(t.load(0) >= m - 1);
      if (e.branch == Branch::thm_case_1_3_2) {
        CHECK(t.faulty_vertices[0] == m - 1);
      } else {
        int other = 0;
        for (int i = 1; i < 4; ++i) {
          if (t.load(i) >= m - 1) other = i;
        }
        if (e.branch == Branch::thm_case_1_3_1_1) {
          CHECK((other == 1 || other == 3));
        } else {
          CHECK(other == 2);
        }
      }
      break;
    }
    case Branch::l31_base_n1:
      CHECK(m == 1);
      break;
    case Branch::l31_base_n2:
      CHECK(m == 2);
      break;
    case Branch::l31_case_1:
    case Branch::l31_case_2:
      CHECK(m >= 3);
      CHECK(e.split_dimension >= 1);
      for (int i = 0; i < 4; ++i) CHECK(t.load(i) <= m - 2);
      break;
    case Branch::l31_no_faulty_edges:
      CHECK(e.edge_faults == 0);
      break;
    case Branch::l31_direct_search:
      break;
  }
  if (is_theorem_branch(e.branch)) {
    CHECK(e.vertex_faults <= m - 1);
    CHECK(e.vertex_faults + e.edge_faults <= 2 * m - 2);
  }
}

nlohmann::json targeted() {
  std::ifstream in(BHCYCLE_TEST_DATA_DIR "/targeted.json");
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("labels round trip") {
  std::set<std::string> seen;
  for (Branch b : kAllBranches) {
    CHECK(branch_from_label(label(b)) == b);
    seen.insert(label(b));
  }
  CHECK(seen.size() == 21);
  CHECK(std::string(label(Branch::thm_case_1_2_2)) == "Thm3/Case1.2.2");
  CHECK(std::string(label(Branch::l31_base_n1)) == "L31/BaseN1");
  CHECK(!branch_from_label("Thm3/Case9").has_value());
}

TEST_CASE("catalog rows") {
  const auto& rows = table1_catalog();
  REQUIRE(rows.size() == 8);
  CHECK(table1_faulty_edge() == E({0, 0}, {1, 1}));
  CHECK(rows.front().faulty_vertices == std::array{V({0, 0}), V({1, 0})});
  CHECK(rows.front().cycle.vertices ==
        seq({{3, 0}, {2, 0}, {3, 1}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {0, 2}, {1, 3}, {2, 3}, {3, 3}, {0, 3}}));
  CHECK(rows.back().faulty_vertices == std::array{V({3, 2}), V({2, 2})});
  CHECK(rows.back().cycle.vertices ==
        seq({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 3}, {3, 3}, {2, 3}, {1, 3}, {0, 2}, {1, 2}, {2, 1}, {1, 1}, {0, 1}, {3, 1}}));
  std::set<VertexId> covered;
  for (const auto& r : rows) {
    CHECK(std::set<VertexId>(r.cycle.vertices.begin(), r.cycle.vertices.end()).size() == 14);
    covered.insert(r.faulty_vertices.begin(), r.faulty_vertices.end());
  }
  CHECK(covered.size() == 16);
  CHECK(table1_scenario(0, 1).faulty_vertices == std::set<VertexId>{V({1, 0})});
}

TEST_CASE("cycle examples") {
  const FaultScenario t1{2, {V({0, 0})}, {E({0, 0}, {1, 1})}};
  const auto a = longest_fault_free_cycle(t1);
  CHECK(check_cycle(t1, a.cycle, 14).valid());
  CHECK(a.trace.contains(Branch::thm_base_n2));

  const FaultScenario b2{2, {}, {E({0, 0}, {1, 1}), E({2, 0}, {3, 1})}};
  CHECK(check_cycle(b2, longest_fault_free_cycle(b2).cycle, 16).valid());

  const FaultScenario b3{3, {V({0, 0, 0}), V({1, 1, 1})}, {E({2, 0, 0}, {3, 0, 0}), E({0, 2, 0}, {1, 2, 0})}};
  const auto c = longest_fault_free_cycle(b3);
  CHECK(check_cycle(b3, c.cycle, 60).valid());

  const auto none = longest_fault_free_cycle(FaultScenario{3, {}, {}});
  CHECK(none.cycle.length() == 64);
  CHECK(none.trace.labels().front() == "Thm3/NoFaultyVertices");
}

TEST_CASE("cycle input errors") {
  CHECK_THROWS_AS(longest_fault_free_cycle(FaultScenario{2, {V({0, 0}), V({1, 1})}, {}}), HypothesisViolation);
  CHECK_THROWS_AS(longest_fault_free_cycle(FaultScenario{1, {}, {}}), HypothesisViolation);
  CHECK_THROWS_AS(longest_fault_free_cycle(FaultScenario{2, {}, {make_edge(0, 2)}}), HypothesisViolation);
}

TEST_CASE("path examples") {
  const FaultScenario n1{1, {}, {}};
  const auto a = adjacent_fault_free_path(n1, V({0}), V({1}));
  CHECK(a.path.vertices == seq({{0}, {3}, {2}, {1}}));
  CHECK(a.trace.labels().front() == "L31/BaseN1");

  const FaultScenario n2{2, {V({2, 2})}, {}};
  const auto b = adjacent_fault_free_path(n2, V({0, 0}), V({1, 0}));
  CHECK(check_path(n2, b.path, 13, std::pair{V({0, 0}), V({1, 0})}).valid());

  const FaultScenario n3{3, {V({2, 2, 2})}, {E({0, 1, 1}, {1, 1, 1})}};
  const auto c = adjacent_fault_free_path(n3, V({0, 0, 0}), V({1, 0, 0}));
  CHECK(check_path(n3, c.path, 61, std::pair{V({0, 0, 0}), V({1, 0, 0})}).valid());
  // the edge x-y itself may be faulty
  const FaultScenario own_edge{3, {V({2, 2, 2})}, {E({0, 0, 0}, {1, 0, 0})}};
  const auto d = adjacent_fault_free_path(own_edge, V({0, 0, 0}), V({1, 0, 0}));
  CHECK(check_path(own_edge, d.path, 61, std::pair{V({0, 0, 0}), V({1, 0, 0})}).valid());
}

TEST_CASE("path input errors") {
  const FaultScenario n2{2, {V({2, 2})}, {}};
  CHECK_THROWS_AS(adjacent_fault_free_path(n2, V({0, 0}), V({2, 0})), HypothesisViolation);
  CHECK_THROWS_AS(adjacent_fault_free_path(n2, V({2, 2}), V({3, 2})), HypothesisViolation);
  const FaultScenario over{2, {V({2, 2})}, {E({0, 1}, {1, 1})}};
  CHECK_THROWS_AS(adjacent_fault_free_path(over, V({0, 0}), V({1, 0})), HypothesisViolation);
}

TEST_CASE("targeted scenarios reach their case and satisfy its conditions") {
  for (const auto& k : targeted()) {
    const std::string want = k["label"].get<std::string>();
    CAPTURE(want);
    const FaultScenario s = scenario_from_json(k["scenario"]);
    ConstructionTrace trace;
    if (k.contains("from")) {
      const VertexId x = vertex_from_json(k["from"], s.n);
      const VertexId y = vertex_from_json(k["to"], s.n);
      const auto r = adjacent_fault_free_path(s, x, y);
      CHECK(check_path(s, r.path, full(s) - 1, std::pair{x, y}).valid());
      trace = r.trace;
    } else {
      const auto r = longest_fault_free_cycle(s);
      CHECK(check_cycle(s, r.cycle, full(s)).valid());
      trace = r.trace;
    }
    REQUIRE(!trace.entries.empty());
    CHECK(trace.labels().front() == want);
    CHECK(trace.entries.front().depth == 0);
    for (const auto& e : trace.entries) check_guard(e);
  }
}

TEST_CASE("random cycle scenarios: exact length and sound case choice") {
  for (int n = 3; n <= 4; ++n) {
    SweepConfig c;
    c.n = n;
    c.mode = SweepMode::random;
    c.samples = n == 3 ? 400 : 40;
    c.seed = 3;
    for (const SweepCase& k : random_cases(c)) {
      const auto r = longest_fault_free_cycle(k.scenario);
      CHECK(check_cycle(k.scenario, r.cycle, full(k.scenario)).valid());
      for (const auto& e : r.trace.entries) check_guard(e);
    }
  }
}

TEST_CASE("random path scenarios: exact odd length and sound case choice") {
  SweepConfig c;
  c.n = 3;
  c.target = SweepTarget::lemma;
  c.mode = SweepMode::random;
  c.samples = 300;
  c.seed = 5;
  for (const SweepCase& k : random_cases(c)) {
    REQUIRE(k.ends.has_value());
    const auto r = adjacent_fault_free_path(k.scenario, k.ends->first, k.ends->second);
    CHECK(r.path.length() % 2 == 1);
    CHECK(check_path(k.scenario, r.path, full(k.scenario) - 1, k.ends).valid());
    for (const auto& e : r.trace.entries) check_guard(e);
  }
}

TEST_CASE("deterministic constructions") {
  const FaultScenario s{3, {V({0, 0, 0}), V({1, 1, 1})}, {E({2, 0, 0}, {3, 0, 0})}};
  const auto a = longest_fault_free_cycle(s);
  const auto b = longest_fault_free_cycle(s);
  CHECK(a.cycle == b.cycle);
  CHECK(a.trace.labels() == b.trace.labels());
}
