#include "bhcycle/search.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace bhcycle::search {
namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

class CoverSearch {
 public:
  CoverSearch(const LocalGraph& g, const CoverRequest& request, std::uint64_t node_limit, unsigned attempt)
      : g_(g), req_(request), limit_(node_limit), n_(g.size()) {
    rank_.assign(static_cast<std::size_t>(n_), 0);
    if (attempt > 0) {
      std::mt19937 rng(attempt);
      for (auto& r : rank_) r = rng();
    }
  }

  CoverResult run() {
    CoverResult result;
    if (!well_formed()) return result;
    source_seg_.assign(static_cast<std::size_t>(n_), -1);
    target_seg_.assign(static_cast<std::size_t>(n_), -1);
    for (std::size_t k = 0; k < req_.segments.size(); ++k) {
      source_seg_[idx(req_.segments[k].source)] = static_cast<int>(k);
      target_seg_[idx(req_.segments[k].target)] = static_cast<int>(k);
    }
    visited_.assign(static_cast<std::size_t>(n_), 0);
    unvisited_deg_.assign(static_cast<std::size_t>(n_), 0);
    for (int v = 0; v < n_; ++v) unvisited_deg_[idx(v)] = static_cast<int>(g_.adj[idx(v)].size());
    reached_.assign(static_cast<std::size_t>(n_), 0);
    head_adj_.assign(static_cast<std::size_t>(n_), 0);
    dist_.assign(static_cast<std::size_t>(n_), kUnreached);
    paths_.assign(req_.segments.size(), {});

    const int s0 = req_.segments.front().source;
    visit(s0);
    paths_[0].push_back(s0);
    const bool found = dfs();
    result.nodes = nodes_;
    if (found) {
      result.status = Status::found;
      result.paths = paths_;
    } else {
      result.status = exhausted_ ? Status::exhausted : Status::infeasible;
    }
    return result;
  }

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }
  int color(int v) const { return g_.black[idx(v)]; }

  bool well_formed() const {
    if (req_.segments.empty()) return false;
    std::vector<int> ends;
    std::array<int, 2> endpoint_colors{};
    for (const auto& s : req_.segments) {
      for (int v : {s.source, s.target}) {
        if (v < 0 || v >= n_ || !g_.usable[idx(v)]) return false;
        ends.push_back(v);
        ++endpoint_colors[static_cast<std::size_t>(color(v))];
      }
    }
    std::sort(ends.begin(), ends.end());
    if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) return false;
    for (int c = 0; c < 2; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      if (req_.visit_count[cc] > g_.usable_count[cc] || req_.visit_count[cc] < endpoint_colors[cc]) return false;
    }
    return true;
  }

  void visit(int v) {
    visited_[idx(v)] = 1;
    ++count_[static_cast<std::size_t>(color(v))];
    for (int w : g_.adj[idx(v)]) --unvisited_deg_[idx(w)];
  }

  void unvisit(int v) {
    visited_[idx(v)] = 0;
    --count_[static_cast<std::size_t>(color(v))];
    for (int w : g_.adj[idx(v)]) ++unvisited_deg_[idx(w)];
  }

  int last_segment() const { return static_cast<int>(req_.segments.size()) - 1; }
  int current_target() const { return req_.segments[idx(cur_)].target; }

  bool enterable(int w) const {
    if (visited_[idx(w)] || source_seg_[idx(w)] >= 0) return false;
    const int ts = target_seg_[idx(w)];
    if (ts >= 0 && ts != cur_) return false;
    const auto c = static_cast<std::size_t>(color(w));
    if (count_[c] >= req_.visit_count[c]) return false;
    if (w == current_target() && cur_ == last_segment()) {
      return count_[c] + 1 == req_.visit_count[c] && count_[1 - c] == req_.visit_count[1 - c];
    }
    return true;
  }

  void expand_from(int root, bool track_distance) {
    queue_.clear();
    queue_.push_back(root);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const int u = queue_[qi];
      for (int x : g_.adj[idx(u)]) {
        if (visited_[idx(x)] || reached_[idx(x)] == epoch_ || source_seg_[idx(x)] >= 0) continue;
        reached_[idx(x)] = epoch_;
        dist_[idx(x)] = track_distance ? dist_[idx(u)] + 1 : kUnreached;
        if (target_seg_[idx(x)] < 0) queue_.push_back(x);
      }
    }
  }

  // Returns false when the node cannot lead to a solution. Sets `forced` to a
  // neighbor of head that must be entered next, or -1.
  bool feasible(int head, int& forced) {
    ++epoch_;
    for (int x : g_.adj[idx(head)]) head_adj_[idx(x)] = epoch_;

    dist_[idx(head)] = 0;
    expand_from(head, true);
    for (int k = cur_ + 1; k <= last_segment(); ++k) {
      const int s = req_.segments[idx(k)].source;
      reached_[idx(s)] = epoch_;
      dist_[idx(s)] = kUnreached;
      expand_from(s, false);
    }

    std::array<int, 2> alive{};
    for (int v = 0; v < n_; ++v) {
      if (visited_[idx(v)] || !g_.usable[idx(v)]) continue;
      const int deg = unvisited_deg_[idx(v)];
      const int near_head = head_adj_[idx(v)] == epoch_ ? 1 : 0;
      bool live = reached_[idx(v)] == epoch_;
      const bool is_source = source_seg_[idx(v)] >= 0;
      const int ts = target_seg_[idx(v)];
      if (is_source) {
        live = live && deg >= 1;
      } else if (ts == cur_) {
        live = live && deg + near_head >= 1;
      } else if (ts >= 0) {
        live = live && deg >= 1;
      } else {
        live = live && deg + near_head >= 2;
      }
      if (live) {
        ++alive[static_cast<std::size_t>(color(v))];
      } else if (is_source || ts >= 0) {
        return false;
      }
    }

    std::array<int, 2> needed{};
    for (std::size_t c = 0; c < 2; ++c) {
      needed[c] = req_.visit_count[c] - count_[c];
      if (alive[c] < needed[c]) return false;
    }

    const int target = current_target();
    if (reached_[idx(target)] != epoch_ || dist_[idx(target)] == kUnreached) return false;
    if (cur_ == last_segment() && dist_[idx(target)] > needed[0] + needed[1]) return false;

    forced = -1;
    for (int x : g_.adj[idx(head)]) {
      if (visited_[idx(x)] || source_seg_[idx(x)] >= 0) continue;
      const int ts = target_seg_[idx(x)];
      bool must = false;
      if (ts == cur_) {
        must = unvisited_deg_[idx(x)] == 0;
      } else if (ts < 0) {
        const auto c = static_cast<std::size_t>(color(x));
        must = unvisited_deg_[idx(x)] == 1 && alive[c] == needed[c];
      }
      if (must) {
        if (forced >= 0) return false;
        forced = x;
      }
    }
    return true;
  }

  bool dfs() {
    if (++nodes_ > limit_) {
      exhausted_ = true;
      return false;
    }
    const int head = paths_[idx(cur_)].back();
    if (head == current_target()) {
      if (cur_ == last_segment()) return count_ == req_.visit_count;
      const int next = req_.segments[idx(cur_ + 1)].source;
      const auto c = static_cast<std::size_t>(color(next));
      if (visited_[idx(next)] || count_[c] >= req_.visit_count[c]) return false;
      ++cur_;
      visit(next);
      paths_[idx(cur_)].push_back(next);
      if (dfs()) return true;
      paths_[idx(cur_)].pop_back();
      unvisit(next);
      --cur_;
      return false;
    }

    int forced = -1;
    if (!feasible(head, forced)) return false;

    std::vector<int> candidates;
    if (forced >= 0) {
      if (enterable(forced)) candidates.push_back(forced);
    } else {
      for (int w : g_.adj[idx(head)]) {
        if (enterable(w)) candidates.push_back(w);
      }
      const int target = current_target();
      const bool intermediate = cur_ != last_segment();
      std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        const bool ta = intermediate && a == target;
        const bool tb = intermediate && b == target;
        if (ta != tb) return tb;
        if (unvisited_deg_[idx(a)] != unvisited_deg_[idx(b)]) return unvisited_deg_[idx(a)] < unvisited_deg_[idx(b)];
        return rank_[idx(a)] < rank_[idx(b)];
      });
    }

    for (int w : candidates) {
      visit(w);
      paths_[idx(cur_)].push_back(w);
      if (dfs()) return true;
      paths_[idx(cur_)].pop_back();
      unvisit(w);
      if (exhausted_) return false;
    }
    return false;
  }

  const LocalGraph& g_;
  const CoverRequest& req_;
  std::uint64_t limit_;
  int n_;
  std::vector<std::uint32_t> rank_;

  std::vector<int> source_seg_;
  std::vector<int> target_seg_;
  std::vector<std::uint8_t> visited_;
  std::vector<int> unvisited_deg_;
  std::array<int, 2> count_{};
  int cur_ = 0;
  std::vector<std::vector<int>> paths_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;

  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> reached_;
  std::vector<std::uint32_t> head_adj_;
  std::vector<int> dist_;
  std::vector<int> queue_;
};

}  // namespace

LocalGraph LocalGraph::build(const Subcube& view, const FaultScenario& faults, std::span<const VertexId> blocked,
                             std::span<const Edge> removed) {
  LocalGraph g{view, {}, {}, {}, {}};
  const auto n = static_cast<std::size_t>(view.size());
  g.adj.resize(n);
  g.black.resize(n);
  g.usable.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const VertexId v = view.to_ambient(static_cast<std::uint32_t>(l));
    g.black[l] = static_cast<std::uint8_t>(v & 1u);
    const bool is_blocked = std::find(blocked.begin(), blocked.end(), v) != blocked.end();
    g.usable[l] = !faults.vertex_faulty(v) && !is_blocked;
    if (g.usable[l]) ++g.usable_count[g.black[l]];
  }
  for (std::size_t l = 0; l < n; ++l) {
    if (!g.usable[l]) continue;
    const VertexId v = view.to_ambient(static_cast<std::uint32_t>(l));
    for (VertexId w : view.neighbors(v)) {
      const auto lw = static_cast<std::size_t>(view.to_local(w));
      if (!g.usable[lw] || faults.edge_faulty(v, w)) continue;
      if (std::find(removed.begin(), removed.end(), make_edge(v, w)) != removed.end()) continue;
      g.adj[l].push_back(static_cast<int>(lw));
    }
  }
  return g;
}

// Degree ordering occasionally walks into a dead region that takes very long
// to refute, so the search restarts with shuffled tie-breaking and a growing
// node allowance. A run that finishes under its allowance is conclusive.
CoverResult cover(const LocalGraph& g, const CoverRequest& request, std::uint64_t node_limit) {
  std::uint64_t used = 0;
  std::uint64_t allowance = std::max<std::uint64_t>(4096, 16 * static_cast<std::uint64_t>(g.size()));
  for (unsigned attempt = 0;; ++attempt) {
    const std::uint64_t remaining = node_limit - used;
    const std::uint64_t slice = std::min(allowance, remaining);
    CoverResult r = CoverSearch(g, request, slice, attempt).run();
    used += std::min(r.nodes, slice);
    r.nodes = used;
    if (r.status != Status::exhausted || used >= node_limit) return r;
    allowance *= 2;
  }
}

SequenceResult path_of_length(const LocalGraph& g, VertexId from, VertexId to, int length, std::uint64_t node_limit) {
  SequenceResult out;
  if (!g.view.contains(from) || !g.view.contains(to) || from == to || length < 1) return out;
  const int s = g.local(from);
  const int t = g.local(to);
  const int cs = g.black[static_cast<std::size_t>(s)];
  const int ct = g.black[static_cast<std::size_t>(t)];
  CoverRequest req;
  req.segments.push_back({s, t});
  if (cs != ct) {
    if (length % 2 == 0) return out;
    req.visit_count = {(length + 1) / 2, (length + 1) / 2};
  } else {
    if (length % 2 != 0) return out;
    req.visit_count[static_cast<std::size_t>(cs)] = length / 2 + 1;
    req.visit_count[static_cast<std::size_t>(1 - cs)] = length / 2;
  }
  const CoverResult r = cover(g, req, node_limit);
  out.status = r.status;
  out.nodes = r.nodes;
  if (r.status == Status::found) {
    for (int l : r.paths.front()) out.vertices.push_back(g.ambient(l));
  }
  return out;
}

SequenceResult cycle_through(const LocalGraph& g, const Edge& e, int length, std::uint64_t node_limit) {
  SequenceResult out;
  if (length < 4 || length % 2 != 0 || !g.view.contains(e)) return out;
  const int a = g.local(e.u);
  const int b = g.local(e.v);
  const auto& nb = g.adj[static_cast<std::size_t>(a)];
  if (std::find(nb.begin(), nb.end(), b) == nb.end()) return out;
  SequenceResult path = path_of_length(g, e.v, e.u, length - 1, node_limit);
  out.status = path.status;
  out.nodes = path.nodes;
  if (path.status == Status::found) {
    out.vertices.push_back(e.u);
    out.vertices.insert(out.vertices.end(), path.vertices.begin(), path.vertices.end() - 1);
  }
  return out;
}

SequenceResult cycle_of_length(const LocalGraph& g, int length, std::uint64_t node_limit) {
  SequenceResult out;
  bool exhausted = false;
  for (int l = 0; l < g.size(); ++l) {
    for (int w : g.adj[static_cast<std::size_t>(l)]) {
      if (w < l) continue;
      const std::uint64_t remaining = node_limit > out.nodes ? node_limit - out.nodes : 0;
      if (remaining == 0) {
        out.status = Status::exhausted;
        return out;
      }
      SequenceResult r = cycle_through(g, make_edge(g.ambient(l), g.ambient(w)), length, remaining);
      out.nodes += r.nodes;
      if (r.status == Status::found) {
        r.nodes = out.nodes;
        return r;
      }
      exhausted = exhausted || r.status == Status::exhausted;
    }
  }
  out.status = exhausted ? Status::exhausted : Status::infeasible;
  return out;
}

}  // namespace bhcycle::search
