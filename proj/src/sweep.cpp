#include "bhcycle/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <thread>

#include "bhcycle/brute.hpp"
#include "bhcycle/check.hpp"
#include "bhcycle/embedding.hpp"
#include "bhcycle/errors.hpp"

namespace bhcycle {

namespace {

std::vector<Edge> all_edges(int n) {
  std::vector<Edge> out;
  for (VertexId v = 0; v < vertex_count(n); ++v) {
    for (VertexId w : neighbors(v, n)) {
      if (v < w) out.push_back(make_edge(v, w));
    }
  }
  return out;
}

// Calls f on every k-subset of [0, size) in lexicographic order.
template <class F>
void for_each_subset(int size, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > size) return;
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == size - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < k; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
  }
}

class CaseGenerator {
 public:
  CaseGenerator(const SweepConfig& c, std::size_t index)
      : c_(c), n_(c.n) {
    std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
    clustered_ = n_ >= 2 && (c.placement == FaultPlacement::clustered ||
                             (c.placement == FaultPlacement::mixed && index % 2 == 1));
  }

  SweepCase next() {
    SweepCase out;
    out.scenario.n = n_;
    Subcube region(n_);
    if (clustered_) region = region.member(pick(1, n_ - 1), pick(0, 3));
    const int max_v = vertex_fault_limit(c_);
    const int max_total = total_fault_limit(c_);
    const int fv = clustered_ ? pick(std::min(1, max_v), max_v) : pick(0, max_v);
    const int total = clustered_ ? std::max(fv, max_total) : pick(fv, std::max(fv, max_total));

    std::vector<VertexId> pool = region.vertices();
    if (c_.target == SweepTarget::lemma) {
      const VertexId x = pool[static_cast<std::size_t>(pick(0, static_cast<int>(pool.size()) - 1))];
      const auto nb = neighbors(x, n_);
      const VertexId y = nb[static_cast<std::size_t>(pick(0, static_cast<int>(nb.size()) - 1))];
      out.ends = std::pair{x, y};
      std::erase_if(pool, [&](VertexId v) { return v == x || v == y; });
    }
    std::shuffle(pool.begin(), pool.end(), rng_);
    for (int k = 0; k < fv && k < static_cast<int>(pool.size()); ++k) {
      out.scenario.faulty_vertices.insert(pool[static_cast<std::size_t>(k)]);
    }
    std::vector<Edge> edges;
    for (VertexId v : region.vertices()) {
      for (VertexId w : region.neighbors(v)) {
        if (v < w) edges.push_back(make_edge(v, w));
      }
    }
    std::shuffle(edges.begin(), edges.end(), rng_);
    for (std::size_t k = 0; out.scenario.fault_count() < total && k < edges.size(); ++k) {
      out.scenario.faulty_edges.insert(edges[k]);
    }
    return out;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  const SweepConfig& c_;
  int n_;
  std::mt19937_64 rng_;
  bool clustered_ = false;
};

struct Outcome {
  bool ok = false;
  std::vector<std::string> labels;
  double ms = 0;
  std::string error;
  std::string instance;
  bool brute_compared = false;
  bool brute_equal = false;
  bool brute_exceeded = false;
};

Outcome evaluate(const SweepConfig& c, const SweepCase& k) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const EmbeddingOptions options{c.budget};
    const auto full = static_cast<std::size_t>(vertex_count(k.scenario.n)) - 2 * static_cast<std::size_t>(k.scenario.vertex_fault_count());
    std::size_t length = 0;
    CheckReport report;
    if (c.target == SweepTarget::theorem) {
      const CycleConstruction r = longest_fault_free_cycle(k.scenario, options);
      out.labels = r.trace.labels();
      length = r.cycle.length();
      report = check_cycle(k.scenario, r.cycle, full);
    } else {
      if (!k.ends) throw Error("lemma case without end vertices");
      const PathConstruction r = adjacent_fault_free_path(k.scenario, k.ends->first, k.ends->second, options);
      out.labels = r.trace.labels();
      length = r.path.length();
      report = check_path(k.scenario, r.path, full - 1, k.ends);
    }
    if (!report.valid()) throw Error("witness rejected by the checker: " + report.summary());
    out.ok = true;
    if (c.compare_brute_force && c.target == SweepTarget::theorem) {
      const int best = brute_longest_cycle(k.scenario).longest_cycle;
      out.brute_compared = true;
      out.brute_equal = static_cast<std::size_t>(best) == length;
      out.brute_exceeded = length > static_cast<std::size_t>(best);
      if (out.brute_exceeded) {
        out.ok = false;
        out.error = "engine cycle longer than the exhaustive maximum " + std::to_string(best);
      }
    }
  } catch (const OracleFailure& e) {
    out.error = e.what();
    out.instance = e.instance;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

int vertex_fault_limit(const SweepConfig& c) { return c.max_vertex_faults >= 0 ? c.max_vertex_faults : c.n - 1; }

int total_fault_limit(const SweepConfig& c) {
  if (c.max_total_faults >= 0) return c.max_total_faults;
  return c.target == SweepTarget::theorem ? 2 * c.n - 2 : c.n - 1;
}

std::vector<SweepCase> exhaustive_cases(const SweepConfig& c) {
  check_dimension(c.n);
  if (c.n > 2) throw CapacityError("exhaustive sweeps are limited to n <= 2");
  const int n = c.n;
  const auto V = static_cast<int>(vertex_count(n));
  const std::vector<Edge> edges = all_edges(n);
  std::vector<SweepCase> out;
  for (int fv = 0; fv <= vertex_fault_limit(c); ++fv) {
    for_each_subset(V, fv, [&](const std::vector<int>& vs) {
      for (int fe = 0; fv + fe <= total_fault_limit(c); ++fe) {
        for_each_subset(static_cast<int>(edges.size()), fe, [&](const std::vector<int>& es) {
          FaultScenario s;
          s.n = n;
          for (int v : vs) s.faulty_vertices.insert(static_cast<VertexId>(v));
          for (int e : es) s.faulty_edges.insert(edges[static_cast<std::size_t>(e)]);
          if (c.target == SweepTarget::theorem) {
            out.push_back({s, std::nullopt});
            return;
          }
          for (const Edge& e : edges) {
            if (s.vertex_faulty(e.u) || s.vertex_faulty(e.v)) continue;
            out.push_back({s, std::pair{e.u, e.v}});
            out.push_back({s, std::pair{e.v, e.u}});
          }
        });
      }
    });
  }
  return out;
}

std::vector<SweepCase> random_cases(const SweepConfig& c) {
  check_dimension(c.n);
  std::vector<SweepCase> out;
  out.reserve(c.samples);
  for (std::size_t i = 0; i < c.samples; ++i) out.push_back(CaseGenerator(c, i).next());
  return out;
}

SweepSummary run_cases(const SweepConfig& c, std::span<const SweepCase> cases) {
  std::vector<Outcome> outcomes(cases.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < cases.size(); i = cursor++) outcomes[i] = evaluate(c, cases[i]);
  };
  unsigned threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cases.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  SweepSummary summary;
  summary.scenario_count = cases.size();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Outcome& o = outcomes[i];
    summary.max_runtime_ms = std::max(summary.max_runtime_ms, o.ms);
    summary.total_runtime_ms += o.ms;
    for (const auto& l : o.labels) ++summary.branch_histogram[l];
    summary.brute_compared += o.brute_compared;
    summary.brute_equal += o.brute_equal;
    summary.brute_exceeded += o.brute_exceeded;
    if (o.ok) {
      ++summary.success_count;
    } else {
      summary.failures.push_back({cases[i], o.error, o.instance});
    }
  }
  return summary;
}

SweepSummary sweep(const SweepConfig& c) {
  const std::vector<SweepCase> cases = c.mode == SweepMode::exhaustive ? exhaustive_cases(c) : random_cases(c);
  return run_cases(c, cases);
}

}  // namespace bhcycle
