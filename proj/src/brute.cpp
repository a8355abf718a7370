#include "bhcycle/brute.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "bhcycle/errors.hpp"

namespace bhcycle {

namespace {

using Mask = std::uint32_t;

class LongestCycle {
 public:
  explicit LongestCycle(const FaultScenario& s) : size_(static_cast<int>(vertex_count(s.n))), adj_(size_, 0) {
    for (int v = 0; v < size_; ++v) {
      if (s.vertex_faulty(static_cast<VertexId>(v))) continue;
      for (VertexId w : neighbors(static_cast<VertexId>(v), s.n)) {
        if (s.edge_usable(static_cast<VertexId>(v), w)) adj_[v] |= Mask{1} << w;
      }
    }
    // vertices of degree < 2 lie on no cycle
    for (bool changed = true; changed;) {
      changed = false;
      for (int v = 0; v < size_; ++v) {
        if (adj_[v] != 0 && std::popcount(adj_[v]) < 2) {
          for (int w = 0; w < size_; ++w) adj_[w] &= ~(Mask{1} << v);
          adj_[v] = 0;
          changed = true;
        }
      }
    }
    for (int v = 0; v < size_; ++v) {
      if (adj_[v] != 0) core_ |= Mask{1} << v;
    }
    for (int v = 0; v < size_; v += 2) white_ |= Mask{1} << v;
  }

  BruteForceResult run() {
    ceiling_ = bound(core_, 0);
    for (int s = 0; s < size_ && best_ < ceiling_; ++s) {
      if (!(core_ >> s & 1u)) continue;
      start_ = s;
      const Mask above = core_ & ~((Mask{2} << s) - 1);
      dfs(s, Mask{1} << s, above, 1);
    }
    return {best_, nodes_};
  }

 private:
  // Cycles alternate colors, so at most twice the smaller color class fits.
  int bound(Mask available, Mask used) const {
    const int w = std::popcount((available | used) & white_);
    const int b = std::popcount((available | used) & ~white_);
    return 2 * std::min(w, b);
  }

  void dfs(int head, Mask used, Mask available, int length) {
    ++nodes_;
    if (length >= 4 && (adj_[head] >> start_ & 1u)) best_ = std::max(best_, length);
    if (best_ >= ceiling_ || bound(available, used) <= best_) return;
    for (Mask next = adj_[head] & available; next != 0 && best_ < ceiling_; next &= next - 1) {
      const int w = std::countr_zero(next);
      dfs(w, used | (Mask{1} << w), available & ~(Mask{1} << w), length + 1);
    }
  }

  int size_;
  std::vector<Mask> adj_;
  Mask core_ = 0;
  Mask white_ = 0;
  int start_ = 0;
  int ceiling_ = 0;
  int best_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

BruteForceResult brute_longest_cycle(const FaultScenario& s) {
  check_dimension(s.n);
  if (vertex_count(s.n) > static_cast<std::uint64_t>(kBruteForceMaxVertices)) {
    throw CapacityError("exhaustive cycle search is limited to " + std::to_string(kBruteForceMaxVertices) +
                        " vertices; BH_" + std::to_string(s.n) + " has " + std::to_string(vertex_count(s.n)));
  }
  return LongestCycle(s).run();
}

}  // namespace bhcycle
