#include "bhcycle/dot.hpp"

#include <set>
#include <sstream>

namespace bhcycle {

std::string to_dot(int n, const DotStyle& style) {
  check_dimension(n);
  std::set<Edge> walked;
  if (style.witness && style.witness->size() >= 2) {
    const auto& w = *style.witness;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) walked.insert(make_edge(w[i], w[i + 1]));
    if (style.witness_is_cycle && w.size() >= 3) walked.insert(make_edge(w.back(), w.front()));
  }
  const std::set<VertexId> on_witness = style.witness ? std::set<VertexId>(style.witness->begin(), style.witness->end())
                                                      : std::set<VertexId>{};

  std::ostringstream out;
  out << "graph BH_" << n << " {\n  node [shape=circle];\n";
  for (VertexId v = 0; v < vertex_count(n); ++v) {
    out << "  v" << v << " [label=\"" << format_vertex(v, n) << "\"";
    if (color_of(v) == Color::black) out << ", style=filled, fillcolor=black, fontcolor=white";
    if (style.faults && style.faults->vertex_faulty(v)) {
      out << ", color=red, penwidth=3";
    } else if (on_witness.contains(v)) {
      out << ", color=blue, penwidth=2";
    }
    out << "];\n";
  }
  for (VertexId v = 0; v < vertex_count(n); ++v) {
    for (VertexId w : neighbors(v, n)) {
      if (w <= v) continue;
      const Edge e = make_edge(v, w);
      out << "  v" << v << " -- v" << w;
      if (style.faults && style.faults->faulty_edges.contains(e)) {
        out << " [color=red, style=dashed]";
      } else if (walked.contains(e)) {
        out << " [color=blue, penwidth=3]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace bhcycle
