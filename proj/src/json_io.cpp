#include "bhcycle/json_io.hpp"

#include <cctype>

#include "bhcycle/errors.hpp"

namespace bhcycle {

using nlohmann::json;

namespace {

const char* to_string(SweepTarget t) { return t == SweepTarget::theorem ? "theorem" : "lemma"; }
const char* to_string(SweepMode m) { return m == SweepMode::exhaustive ? "exhaustive" : "random"; }
const char* to_string(FaultPlacement p) {
  switch (p) {
    case FaultPlacement::uniform: return "uniform";
    case FaultPlacement::clustered: return "clustered";
    case FaultPlacement::mixed: return "mixed";
  }
  return "?";
}

json case_to_json(const SweepCase& k) {
  json out = scenario_to_json(k.scenario);
  if (k.ends) {
    out["from"] = vertex_to_json(k.ends->first, k.scenario.n);
    out["to"] = vertex_to_json(k.ends->second, k.scenario.n);
  }
  return out;
}

}  // namespace

json vertex_to_json(VertexId v, int n) { return VertexAddress::from_index(v, n).digits(); }

VertexId vertex_from_json(const json& j, int n) {
  if (!j.is_array()) throw MalformedAddress("address must be a digit array, got " + j.dump());
  std::vector<int> digits;
  for (const json& d : j) {
    if (!d.is_number_integer()) throw MalformedAddress("address digits must be integers, got " + j.dump());
    digits.push_back(d.get<int>());
  }
  if (static_cast<int>(digits.size()) != n) {
    throw MalformedAddress("address " + j.dump() + " needs " + std::to_string(n) + " digits");
  }
  return VertexAddress(std::move(digits)).index();
}

VertexId parse_address(std::string_view text, int n) {
  std::vector<int> digits;
  bool pending = false;
  int value = 0;
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      value = value * 10 + (ch - '0');
      pending = true;
    } else if (ch == ',' || ch == ' ' || ch == '(' || ch == ')') {
      if (pending) digits.push_back(value);
      pending = false;
      value = 0;
    } else {
      throw MalformedAddress("unexpected character in address '" + std::string(text) + "'");
    }
  }
  if (pending) digits.push_back(value);
  if (static_cast<int>(digits.size()) != n) {
    throw MalformedAddress("address '" + std::string(text) + "' needs " + std::to_string(n) + " digits");
  }
  return VertexAddress(std::move(digits)).index();
}

json scenario_to_json(const FaultScenario& s) {
  json vs = json::array();
  for (VertexId v : s.faulty_vertices) vs.push_back(vertex_to_json(v, s.n));
  json es = json::array();
  for (const Edge& e : s.faulty_edges) es.push_back({vertex_to_json(e.u, s.n), vertex_to_json(e.v, s.n)});
  return {{"n", s.n}, {"faulty_vertices", vs}, {"faulty_edges", es}};
}

FaultScenario scenario_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw Error("scenario needs an integer field \"n\"");
  }
  FaultScenario s;
  s.n = j["n"].get<int>();
  check_dimension(s.n);
  for (const json& v : j.value("faulty_vertices", json::array())) s.faulty_vertices.insert(vertex_from_json(v, s.n));
  for (const json& e : j.value("faulty_edges", json::array())) {
    if (!e.is_array() || e.size() != 2) throw Error("faulty edge must be a pair of addresses, got " + e.dump());
    const VertexId a = vertex_from_json(e[0], s.n);
    const VertexId b = vertex_from_json(e[1], s.n);
    if (!adjacent(a, b, s.n)) throw NotAnEdge(format_vertex(a, s.n) + " and " + format_vertex(b, s.n) + " are not adjacent");
    s.faulty_edges.insert(make_edge(a, b));
  }
  return s;
}

json witness_to_json(const WitnessDocument& w, int n) {
  json vs = json::array();
  for (VertexId v : w.vertices) vs.push_back(vertex_to_json(v, n));
  return {{"kind", w.kind == WitnessKind::cycle ? "cycle" : "path"}, {"length", w.length}, {"vertices", vs}, {"trace", w.trace}};
}

WitnessDocument witness_from_json(const json& j, int n) {
  if (!j.is_object() || !j.contains("vertices")) throw Error("witness needs a \"vertices\" array");
  WitnessDocument w;
  for (const json& v : j["vertices"]) w.vertices.push_back(vertex_from_json(v, n));
  if (j.contains("kind")) {
    const std::string kind = j["kind"].get<std::string>();
    if (kind != "cycle" && kind != "path") throw Error("witness kind must be \"cycle\" or \"path\"");
    w.kind = kind == "cycle" ? WitnessKind::cycle : WitnessKind::path;
  } else if (j.contains("length")) {
    w.kind = j["length"].get<std::size_t>() == w.vertices.size() ? WitnessKind::cycle : WitnessKind::path;
  }
  const std::size_t natural = w.kind == WitnessKind::cycle ? w.vertices.size() : (w.vertices.empty() ? 0 : w.vertices.size() - 1);
  w.length = j.value("length", natural);
  if (j.contains("trace")) w.trace = j["trace"].get<std::vector<std::string>>();
  return w;
}

json sweep_to_json(const SweepConfig& c, const SweepSummary& s) {
  json failures = json::array();
  for (const SweepFailure& f : s.failures) {
    failures.push_back({{"case", case_to_json(f.input)}, {"error", f.error}, {"instance", f.instance}});
  }
  json out = {
      {"config",
       {{"n", c.n},
        {"target", to_string(c.target)},
        {"mode", to_string(c.mode)},
        {"placement", to_string(c.placement)},
        {"max_vertex_faults", vertex_fault_limit(c)},
        {"max_total_faults", total_fault_limit(c)},
        {"samples", c.samples},
        {"seed", c.seed},
        {"node_limit", c.budget.node_limit}}},
      {"scenario_count", s.scenario_count},
      {"success_count", s.success_count},
      {"branch_histogram", s.branch_histogram},
      {"max_runtime_ms", s.max_runtime_ms},
      {"total_runtime_ms", s.total_runtime_ms},
      {"failures", failures},
  };
  if (c.compare_brute_force) {
    out["brute_force"] = {{"compared", s.brute_compared}, {"equal", s.brute_equal}, {"engine_exceeded", s.brute_exceeded}};
  }
  return out;
}

}  // namespace bhcycle
