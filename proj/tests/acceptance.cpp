// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails. Every tolerance below is exact (zero failures).
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhcycle/brute.hpp"
#include "bhcycle/check.hpp"
#include "bhcycle/embedding.hpp"
#include "bhcycle/errors.hpp"
#include "bhcycle/json_io.hpp"
#include "bhcycle/oracles.hpp"
#include "bhcycle/structural.hpp"
#include "bhcycle/sweep.hpp"

using namespace bhcycle;

namespace {

constexpr std::uint64_t kSeed = 7;

int failures = 0;
std::map<std::string, std::size_t> coverage;

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
  if (!pass) ++failures;
  std::printf("%s  %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void absorb(const SweepSummary& s) {
  for (const auto& [label, count] : s.branch_histogram) coverage[label] += count;
}

std::string first_failure(const SweepSummary& s) {
  if (s.failures.empty()) return "";
  const SweepFailure& f = s.failures.front();
  return "; first failure " + scenario_to_json(f.input.scenario).dump() + ": " + f.error;
}

std::string tally_line(const SweepSummary& s, const char* noun) {
  std::ostringstream out;
  out << s.success_count << "/" << s.scenario_count << " " << noun << ", max " << s.max_runtime_ms << " ms per case";
  return out.str() + first_failure(s);
}

SweepConfig config(int n, SweepTarget target, SweepMode mode, std::size_t samples = 0) {
  SweepConfig c;
  c.n = n;
  c.target = target;
  c.mode = mode;
  c.samples = samples;
  c.seed = kSeed;
  return c;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---- independent helpers for the oracle sweeps -------------------------------

std::vector<Edge> edges_of(int n) {
  std::vector<Edge> out;
  for (VertexId v = 0; v < vertex_count(n); ++v) {
    for (VertexId w : neighbors(v, n)) {
      if (v < w) out.push_back(make_edge(v, w));
    }
  }
  return out;
}

std::vector<std::set<Edge>> edge_sets_up_to(int n, int k) {
  const std::vector<Edge> all = edges_of(n);
  std::vector<std::set<Edge>> out{{}};
  for (int size = 1; size <= k; ++size) {
    std::function<void(std::size_t, std::set<Edge>&)> rec = [&](std::size_t from, std::set<Edge>& cur) {
      if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < all.size(); ++i) {
        cur.insert(all[i]);
        rec(i + 1, cur);
        cur.erase(all[i]);
      }
    };
    std::set<Edge> cur;
    rec(0, cur);
  }
  return out;
}

int bfs_distance(int n, VertexId from, VertexId to) {
  std::vector<int> d(vertex_count(n), -1);
  std::queue<VertexId> q;
  d[from] = 0;
  q.push(from);
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    for (VertexId w : neighbors(v, n)) {
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push(w);
      }
    }
  }
  return d[to];
}

// Largest family of 7-paths (cycles minus the anchor edge) with pairwise
// disjoint interiors.
int disjoint_interiors(const std::vector<CycleWitness>& cycles) {
  std::vector<std::set<VertexId>> interiors;
  for (const auto& c : cycles) interiors.emplace_back(c.vertices.begin() + 2, c.vertices.end());
  int best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    best = std::max(best, static_cast<int>(chosen.size()));
    for (std::size_t i = from; i < interiors.size(); ++i) {
      const bool clash = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
        return std::any_of(interiors[i].begin(), interiors[i].end(), [&](VertexId v) { return interiors[c].contains(v); });
      });
      if (clash) continue;
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

struct FeasibilityTally {
  std::size_t instances = 0;
  std::size_t found = 0;
  std::string first_miss;

  void add(bool ok, const std::string& what) {
    ++instances;
    if (ok) {
      ++found;
    } else if (first_miss.empty()) {
      first_miss = what;
    }
  }
  bool pass() const { return instances > 0 && found == instances; }
  std::string line() const {
    return std::to_string(found) + "/" + std::to_string(instances) + (first_miss.empty() ? "" : " (miss: " + first_miss + ")");
  }
};

FaultScenario with_edges(int n, const std::set<Edge>& es) {
  FaultScenario s;
  s.n = n;
  s.faulty_edges = es;
  return s;
}

std::string oracle_sweeps() {
  std::map<std::string, FeasibilityTally> t;
  for (int m = 1; m <= 2; ++m) {
    const Subcube view(m);
    const auto V = static_cast<VertexId>(vertex_count(m));
    const FaultScenario none = with_edges(m, {});
    auto tag = [m](const std::string& s) { return "BH_" + std::to_string(m) + " " + s; };

    for (const auto& es : edge_sets_up_to(m, 2 * m - 2)) {
      const FaultScenario s = with_edges(m, es);
      for (VertexId x = 0; x < V; ++x) {
        for (VertexId y = 0; y < V; ++y) {
          if (color_of(x) == color_of(y)) continue;
          t["Hamiltonian laceable, |F_e| <= 2m-2"].add(ham_path(view, s, x, y).found(),
                                                       tag(format_vertex(x, m) + "-" + format_vertex(y, m)));
          if (adjacent(x, y, m)) {
            t["Hamiltonian path between adjacent vertices, |F_e| <= 2m-2"].add(
                ham_path_adjacent(view, s, x, y).found(), tag(format_vertex(x, m) + "-" + format_vertex(y, m)));
          }
        }
      }
    }

    for (VertexId x = 0; x < V; ++x) {
      for (VertexId y = 0; y < V; ++y) {
        if (x == y) continue;
        const int d = bfs_distance(m, x, y);
        for (int len = d; len <= static_cast<int>(V) - 1; len += 2) {
          t["bipanconnected"].add(bipan_path(view, none, x, y, len).found(),
                                  tag(format_vertex(x, m) + "-" + format_vertex(y, m) + " L=" + std::to_string(len)));
        }
        if (color_of(x) != color_of(y)) continue;
        for (VertexId del = 0; del < V; ++del) {
          if (color_of(del) == color_of(x)) continue;
          t["hyper-Hamiltonian laceable"].add(hyper_ham_path(view, none, x, y, del).found(),
                                              tag(format_vertex(x, m) + "-" + format_vertex(y, m)));
        }
      }
    }

    for (VertexId x = 0; x < V; ++x) {
      for (VertexId u = 0; u < V; ++u) {
        if (u == x || color_of(u) != color_of(x)) continue;
        for (VertexId y = 0; y < V; ++y) {
          if (color_of(y) == color_of(x)) continue;
          for (VertexId v = 0; v < V; ++v) {
            if (v == y || color_of(v) != color_of(y)) continue;
            t["two disjoint spanning paths"].add(two_disjoint_spanning_paths(view, none, x, y, u, v).found(),
                                                 tag(format_vertex(x, m) + "," + format_vertex(u, m)));
          }
        }
      }
    }

    // every fault-free edge on fault-free cycles of every even length
    for (int fv = 0; fv <= m - 1; ++fv) {
      for (VertexId w = 0; w < (fv ? V : 1); ++w) {
        FaultScenario s = none;
        if (fv) s.faulty_vertices.insert(w);
        for (const Edge& e : edges_of(m)) {
          if (!s.edge_usable(e.u, e.v)) continue;
          for (int len = 4; len <= static_cast<int>(V) - 2 * fv; len += 2) {
            t["edge on every even cycle length, |F_v| <= m-1"].add(cycle_through_edge(view, s, e, len).found(),
                                                                    tag(format_edge(e, m) + " L=" + std::to_string(len)));
          }
        }
      }
    }
    if (2 * m - 3 >= 0) {
      for (const auto& es : edge_sets_up_to(m, 2 * m - 3)) {
        const FaultScenario s = with_edges(m, es);
        for (const Edge& e : edges_of(m)) {
          if (es.contains(e)) continue;
          for (int len = 4; len <= static_cast<int>(V); len += 2) {
            t["edge on every even cycle length, |F_e| <= 2m-3"].add(cycle_through_edge(view, s, e, len).found(),
                                                                     tag(format_edge(e, m) + " L=" + std::to_string(len)));
          }
        }
      }
    }
  }

  // the 8-cycle primitives need a split, so m = 2 only
  const int m = 2;
  const Subcube view(m);
  const FaultScenario none = with_edges(m, {});
  for (const Edge& e : edges_of(m)) {
    const auto cycles = eight_cycles_one_edge_per_subcube(view, none, 1, e);
    t["8-cycle through every edge, one edge per member"].add(eight_cycle_one_edge_per_subcube(view, none, 1, e).found(),
                                                            format_edge(e, m));
    if (edge_dimension(e, m) == 1) {
      t["2m-2 internally disjoint 7-paths across a crossing edge"].add(disjoint_interiors(cycles) >= 2 * m - 2,
                                                                        format_edge(e, m));
    } else {
      t["two internally disjoint 7-paths around a member edge"].add(disjoint_interiors(cycles) >= 2, format_edge(e, m));
    }
  }
  for (int i = 0; i < 4; ++i) {
    std::vector<Edge> member_edges;
    for (const Edge& e : edges_of(m)) {
      if (digit(e.u, 1) == i && digit(e.v, 1) == i) member_edges.push_back(e);
    }
    const auto k = member_edges.size();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<Edge> chosen;
      for (std::size_t b = 0; b < k; ++b) {
        if (mask >> b & 1u) chosen.push_back(member_edges[b]);
      }
      if (chosen.size() < 2) continue;
      const bool found = edge_disjoint_eight_cycles(view, none, 1, chosen).found();
      const std::string what = "member " + std::to_string(i) + " mask " + std::to_string(mask);
      // outside the home member the cycles are pairwise vertex-disjoint, two vertices per member each
      if (2 * chosen.size() <= vertex_count(m - 1)) {
        t["edge-disjoint 8-cycles"].add(found, what);
      } else {
        t["edge-disjoint 8-cycles refused beyond 2k <= 4^(m-1)"].add(!found, what);
      }
    }
  }

  std::ostringstream out;
  bool all = true;
  for (const auto& [name, tally] : t) {
    all = all && tally.pass();
    out << "\n      " << name << ": " << tally.line();
  }
  return (all ? "ok" : "MISSES") + out.str();
}

}  // namespace

int main() {
  std::printf("acceptance run, seed %llu, search budget %llu nodes per oracle call\n",
              static_cast<unsigned long long>(kSeed), static_cast<unsigned long long>(SearchBudget{}.node_limit));

  {
    Stopwatch w;
    SweepConfig c = config(2, SweepTarget::theorem, SweepMode::exhaustive);
    const SweepSummary s = sweep(c);
    absorb(s);
    // |F_v| <= 1, |F_v| + |F_e| <= 2 over 16 vertices and 32 edges
    const std::uint64_t expected = 1 + choose(32, 1) + choose(32, 2) + 16 * (1 + choose(32, 1));
    report("cycles, n=2 exhaustive", s.all_passed() && s.scenario_count == expected,
           tally_line(s, "cycles of length 16-2|F_v|") + ", expected " + std::to_string(expected) + " scenarios", w.seconds());
  }
  {
    Stopwatch w;
    const SweepSummary s = sweep(config(3, SweepTarget::theorem, SweepMode::random, 1000));
    absorb(s);
    report("cycles, n=3 random (|F_v|<=2, f<=4)", s.all_passed() && s.scenario_count == 1000,
           tally_line(s, "cycles of length 64-2|F_v|"), w.seconds());
  }
  {
    Stopwatch w;
    const SweepSummary s = sweep(config(4, SweepTarget::theorem, SweepMode::random, 100));
    absorb(s);
    report("cycles, n=4 random (|F_v|<=3, f<=6)", s.all_passed() && s.scenario_count == 100,
           tally_line(s, "cycles of length 256-2|F_v|"), w.seconds());
  }
  {
    Stopwatch w;
    const SweepSummary a = sweep(config(2, SweepTarget::lemma, SweepMode::exhaustive));
    const SweepSummary b = sweep(config(3, SweepTarget::lemma, SweepMode::random, 500));
    absorb(a);
    absorb(b);
    report("adjacent-vertex paths, n=2 exhaustive + n=3 random",
           a.all_passed() && b.all_passed() && b.scenario_count == 500,
           "n=2: " + tally_line(a, "paths") + "; n=3: " + tally_line(b, "paths of length 64-2|F_v|-1"), w.seconds());
  }
  {
    Stopwatch w;
    int valid = 0;
    int total = 0;
    for (int row = 0; row < static_cast<int>(table1_catalog().size()); ++row) {
      for (int which = 0; which < 2; ++which) {
        ++total;
        const CycleWitness& c = table1_catalog()[static_cast<std::size_t>(row)].cycle;
        const std::set<VertexId> distinct(c.vertices.begin(), c.vertices.end());
        valid += check_cycle(table1_scenario(row, which), c, 14).valid() && distinct.size() == 14;
      }
    }
    report("BH_2 14-cycle catalog", valid == 16 && total == 16,
           std::to_string(valid) + "/" + std::to_string(total) + " (row, faulty vertex) scenarios valid at length 14",
           w.seconds());
  }
  {
    Stopwatch w;
    SweepConfig c = config(2, SweepTarget::theorem, SweepMode::exhaustive);
    c.compare_brute_force = true;
    const SweepSummary s = sweep(c);
    std::ostringstream detail;
    detail << s.brute_compared << " scenarios compared, engine never longer than the exhaustive maximum ("
           << s.brute_exceeded << " violations), equal in " << s.brute_equal << "/" << s.brute_compared;
    report("exhaustive longest-cycle agreement, n=2",
           s.brute_exceeded == 0 && s.brute_compared == s.scenario_count && s.all_passed(), detail.str(), w.seconds());
  }
  {
    Stopwatch w;
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 4; ++n) {
      const StructuralReport r = structural_suite(n);
      ok = ok && r.ok();
      detail += (n > 1 ? ", " : "") + std::string("BH_") + std::to_string(n) + " " + std::to_string(r.checks.size()) +
                " properties " + (r.ok() ? "hold" : "FAIL");
      if (!r.ok()) std::cout << r.summary();
    }
    report("structural properties, n=1..4", ok, detail, w.seconds());
  }
  {
    Stopwatch w;
    const std::string detail = oracle_sweeps();
    report("subroutine feasibility, m<=2", detail.rfind("ok", 0) == 0, detail, w.seconds());
  }
  {
    Stopwatch w;
    int scenarios = 0;
    int short_of_16 = 0;
    int rejected = 0;
    int longest = 0;
    for (VertexId v = 0; v < 16; ++v) {
      const auto nb = neighbors(v, 2);
      for (std::size_t skip = 0; skip < nb.size(); ++skip) {
        FaultScenario s;
        s.n = 2;
        for (std::size_t k = 0; k < nb.size(); ++k) {
          if (k != skip) s.faulty_edges.insert(make_edge(v, nb[k]));
        }
        ++scenarios;
        rejected += !validate(s).ok();
        const int best = brute_longest_cycle(s).longest_cycle;
        longest = std::max(longest, best);
        short_of_16 += best < 16;
      }
    }
    report("three faulty edges at one vertex, n=2", scenarios == 64 && short_of_16 == 64 && rejected == 64,
           std::to_string(short_of_16) + "/" + std::to_string(scenarios) +
               " placements have no 16-cycle (longest " + std::to_string(longest) + "), " + std::to_string(rejected) +
               " rejected by validation",
           w.seconds());
  }
  {
    Stopwatch w;
    std::ifstream in(BHCYCLE_TEST_DATA_DIR "/targeted.json");
    const auto cases = nlohmann::json::parse(in);
    int matched = 0;
    std::string misses;
    for (const auto& k : cases) {
      const std::string want = k["label"].get<std::string>();
      const FaultScenario s = scenario_from_json(k["scenario"]);
      ConstructionTrace trace;
      try {
        if (k.contains("from")) {
          trace = adjacent_fault_free_path(s, vertex_from_json(k["from"], s.n), vertex_from_json(k["to"], s.n)).trace;
        } else {
          trace = longest_fault_free_cycle(s).trace;
        }
      } catch (const std::exception& e) {
        misses += " " + want + " (" + e.what() + ")";
        continue;
      }
      for (const auto& l : trace.labels()) ++coverage[l];
      if (trace.labels().front() == want) {
        ++matched;
      } else {
        misses += " " + want + " (got " + trace.labels().front() + ")";
      }
    }
    std::vector<std::string> missing;
    for (Branch b : kAllBranches) {
      if (!coverage.contains(label(b))) missing.emplace_back(label(b));
    }
    std::ostringstream detail;
    detail << (kAllBranches.size() - missing.size()) << "/" << kAllBranches.size() << " labels exercised, targeted suite "
           << matched << "/" << cases.size() << " hit their label at the top level";
    for (const auto& m : missing) detail << "; missing " << m;
    if (!misses.empty()) detail << "; mismatches:" << misses;
    detail << "\n      histogram:";
    for (const auto& [l, count] : coverage) detail << " " << l << "=" << count;
    report("branch coverage", missing.empty() && matched == static_cast<int>(cases.size()), detail.str(), w.seconds());
  }

  std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " criteria failed").c_str());
  return failures == 0 ? 0 : 1;
}
