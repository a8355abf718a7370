#include "bhcycle/topology.hpp"

#include <algorithm>
#include <sstream>

#include "bhcycle/errors.hpp"

namespace bhcycle {

void check_dimension(int n) {
  if (n < 1 || n > kHardMaxDimension) {
    throw CapacityError("dimension " + std::to_string(n) + " outside supported range 1.." +
                        std::to_string(kHardMaxDimension));
  }
}

void check_vertex(VertexId v, int n) {
  check_dimension(n);
  if (static_cast<std::uint64_t>(v) >= vertex_count(n)) {
    throw MalformedAddress("vertex index " + std::to_string(v) + " out of range for BH_" + std::to_string(n));
  }
}

VertexAddress::VertexAddress(std::vector<int> digits) : digits_(std::move(digits)) {
  if (digits_.empty() || static_cast<int>(digits_.size()) > kHardMaxDimension) {
    throw MalformedAddress("address must have between 1 and " + std::to_string(kHardMaxDimension) + " digits");
  }
  for (int d : digits_) {
    if (d < 0 || d > 3) {
      throw MalformedAddress("address digit " + std::to_string(d) + " not in {0,1,2,3}");
    }
  }
}

VertexAddress VertexAddress::from_index(VertexId id, int n) {
  check_vertex(id, n);
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) digits[static_cast<std::size_t>(k)] = bhcycle::digit(id, k);
  return VertexAddress(std::move(digits));
}

VertexId VertexAddress::index() const {
  VertexId id = 0;
  for (int k = dimension() - 1; k >= 0; --k) id = (id << 2) | static_cast<VertexId>(digits_[static_cast<std::size_t>(k)]);
  return id;
}

std::string VertexAddress::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < digits_.size(); ++k) {
    if (k) s += ',';
    s += static_cast<char>('0' + digits_[k]);
  }
  return s + ")";
}

std::string format_vertex(VertexId v, int n) { return VertexAddress::from_index(v, n).to_string(); }

std::string format_edge(const Edge& e, int n) {
  return "(" + format_vertex(e.u, n) + "," + format_vertex(e.v, n) + ")";
}

std::vector<VertexId> neighbors(VertexId v, int n) {
  check_vertex(v, n);
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  const int a0 = digit(v, 0);
  out.push_back(with_digit(v, 0, a0 + 1));
  out.push_back(with_digit(v, 0, a0 + 3));
  for (int j = 1; j < n; ++j) {
    const auto extra = extra_neighbors(v, j);
    out.push_back(extra[0]);
    out.push_back(extra[1]);
  }
  return out;
}

std::vector<VertexAddress> neighbors(const VertexAddress& v) {
  const int n = v.dimension();
  std::vector<VertexAddress> out;
  for (VertexId w : neighbors(v.index(), n)) out.push_back(VertexAddress::from_index(w, n));
  return out;
}

std::array<VertexId, 2> extra_neighbors(VertexId v, int j) {
  const int a0 = digit(v, 0);
  const int step = direction_of(v);
  const VertexId shifted = with_digit(v, j, digit(v, j) + step);
  return {with_digit(shifted, 0, a0 + 1), with_digit(shifted, 0, a0 + 3)};
}

bool adjacent(VertexId a, VertexId b, int n) {
  const VertexId diff = a ^ b;
  if ((diff & 3u) == 0) return false;
  const int da = digit(a, 0);
  const int db = digit(b, 0);
  if ((da + 1) % 4 != db && (da + 3) % 4 != db) return false;
  const VertexId rest = diff >> 2;
  if (rest == 0) return true;
  // Exactly one higher digit differs, shifted by (-1)^{a_0} as seen from a.
  for (int j = 1; j < n; ++j) {
    if (digit(a, j) != digit(b, j)) {
      if ((rest & ~(VertexId{3} << (2 * (j - 1)))) != 0) return false;
      return digit(b, j) == ((digit(a, j) + direction_of(a)) & 3);
    }
  }
  return false;
}

int edge_dimension(const Edge& e, int n) {
  check_vertex(e.u, n);
  check_vertex(e.v, n);
  if (!adjacent(e.u, e.v, n)) {
    throw NotAnEdge(format_vertex(e.u, n) + " and " + format_vertex(e.v, n) + " are not adjacent");
  }
  for (int j = 1; j < n; ++j) {
    if (digit(e.u, j) != digit(e.v, j)) return j;
  }
  return 0;
}

int edge_dimension(const VertexAddress& a, const VertexAddress& b) {
  if (a.dimension() != b.dimension()) throw NotAnEdge("endpoints have different dimensions");
  return edge_dimension(make_edge(a.index(), b.index()), a.dimension());
}

VertexAddress twin(const VertexAddress& v) {
  return VertexAddress::from_index(twin(v.index()), v.dimension());
}

BalancedHypercube::BalancedHypercube(int n, int max_dimension) : n_(n) {
  if (n < 1) throw CapacityError("dimension must be at least 1");
  if (n > max_dimension || n > kHardMaxDimension) {
    throw CapacityError("dimension " + std::to_string(n) + " exceeds configured maximum " +
                        std::to_string(std::min(max_dimension, kHardMaxDimension)));
  }
  vertex_count_ = static_cast<std::size_t>(bhcycle::vertex_count(n));
  adjacency_.reserve(vertex_count_ * static_cast<std::size_t>(2 * n));
  for (VertexId v = 0; v < vertex_count_; ++v) {
    const auto nb = bhcycle::neighbors(v, n);
    adjacency_.insert(adjacency_.end(), nb.begin(), nb.end());
  }
}

std::vector<Edge> BalancedHypercube::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId v = 0; v < vertex_count_; ++v) {
    for (VertexId w : neighbors(v)) {
      if (v < w) out.push_back({v, w});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subcube::Subcube(int n) : n_(n) {
  check_dimension(n);
  for (int k = 0; k < n; ++k) free_.push_back(k);
}

Subcube Subcube::member(int j, int i) const {
  if (j < 1 || j >= n_ || std::find(free_.begin(), free_.end(), j) == free_.end()) {
    throw UnsupportedSplit("dimension " + std::to_string(j) + " is not a free split dimension of " + describe());
  }
  Subcube out = *this;
  out.fixed_mask_ |= VertexId{3} << (2 * j);
  out.fixed_bits_ = with_digit(out.fixed_bits_, j, i);
  out.free_.erase(std::find(out.free_.begin(), out.free_.end(), j));
  return out;
}

VertexId Subcube::to_ambient(std::uint32_t local) const {
  VertexId v = fixed_bits_;
  for (int f : free_) {
    v = with_digit(v, f, static_cast<int>(local & 3u));
    local >>= 2;
  }
  return v;
}

std::uint32_t Subcube::to_local(VertexId v) const {
  std::uint32_t local = 0;
  for (auto it = free_.rbegin(); it != free_.rend(); ++it) local = (local << 2) | static_cast<std::uint32_t>(digit(v, *it));
  return local;
}

std::vector<VertexId> Subcube::vertices() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t l = 0; l < size(); ++l) out.push_back(to_ambient(l));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> Subcube::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(2 * dimension()));
  const int a0 = digit(v, 0);
  out.push_back(with_digit(v, 0, a0 + 1));
  out.push_back(with_digit(v, 0, a0 + 3));
  for (int j : free_) {
    if (j == 0) continue;
    const auto extra = extra_neighbors(v, j);
    out.push_back(extra[0]);
    out.push_back(extra[1]);
  }
  return out;
}

std::string Subcube::describe() const {
  std::ostringstream os;
  os << "BH_" << dimension() << " in BH_" << n_;
  for (int k = 1; k < n_; ++k) {
    if ((fixed_mask_ >> (2 * k)) & 3u) os << " a_" << k << "=" << digit(fixed_bits_, k);
  }
  return os.str();
}

VertexId SubcubeFrame::project(VertexId v) const {
  const VertexId low = v & ((VertexId{1} << (2 * split_dimension)) - 1);
  const VertexId high = v >> (2 * (split_dimension + 1));
  return low | (high << (2 * split_dimension));
}

VertexId SubcubeFrame::lift(VertexId projected, int i) const {
  const VertexId low = projected & ((VertexId{1} << (2 * split_dimension)) - 1);
  const VertexId high = projected >> (2 * split_dimension);
  return low | (static_cast<VertexId>(i & 3) << (2 * split_dimension)) | (high << (2 * (split_dimension + 1)));
}

Subcube SubcubeFrame::member_view(int i) const { return Subcube(n).member(split_dimension, i); }

SubcubeFrame split(int n, int j) {
  check_dimension(n);
  if (j < 1 || j >= n) {
    throw UnsupportedSplit("split dimension " + std::to_string(j) + " not in 1.." + std::to_string(n - 1));
  }
  SubcubeFrame frame;
  frame.n = n;
  frame.split_dimension = j;
  const auto count = static_cast<VertexId>(vertex_count(n));
  for (VertexId v = 0; v < count; ++v) {
    const int i = digit(v, j);
    frame.members[static_cast<std::size_t>(i)].push_back(v);
    // White vertices own the crossing edges to member i+1.
    if (color_of(v) == Color::white) {
      for (VertexId w : extra_neighbors(v, j)) frame.crossing_edges[static_cast<std::size_t>(i)].push_back(make_edge(v, w));
    }
  }
  for (auto& edges : frame.crossing_edges) std::sort(edges.begin(), edges.end());
  return frame;
}

}  // namespace bhcycle
