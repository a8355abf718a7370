#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bhcycle/check.hpp"
#include "bhcycle/dot.hpp"
#include "bhcycle/embedding.hpp"
#include "bhcycle/errors.hpp"
#include "bhcycle/json_io.hpp"
#include "bhcycle/sweep.hpp"

namespace bhcycle::cli {

namespace {

using nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

struct InputError : Error {
  using Error::Error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  int max_n = kDefaultMaxDimension;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(Context& ctx, const std::string& path, const std::string& text) {
  if (path.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

void require_dimension(const Context& ctx, int n) {
  if (n < 1) throw UsageError("n must be at least 1");
  if (n > ctx.max_n) {
    throw CapacityError("n = " + std::to_string(n) + " exceeds the configured maximum " + std::to_string(ctx.max_n) +
                        " (raise it with --max-n or BHCYCLE_MAX_N)");
  }
}

FaultScenario load_scenario(const Context& ctx, const std::string& path) {
  FaultScenario s;
  try {
    s = scenario_from_json(read_json(path));
  } catch (const CapacityError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
  require_dimension(ctx, s.n);
  return s;
}

void print_trace(Context& ctx, const ConstructionTrace& trace) {
  ctx.out << "trace:\n";
  for (const TraceEntry& e : trace.entries) {
    ctx.out << std::string(2 + 2 * static_cast<std::size_t>(e.depth), ' ') << label(e.branch) << "  m=" << e.dimension
            << " fv=" << e.vertex_faults << " fe=" << e.edge_faults;
    if (e.split_dimension > 0) {
      ctx.out << " split=" << e.split_dimension << " member0=" << e.rotation << " f_i=[";
      for (int i = 0; i < 4; ++i) ctx.out << (i ? "," : "") << e.tally.load(i);
      ctx.out << "] fc=" << e.tally.faulty_crossing;
    }
    ctx.out << '\n';
  }
}

void report_violations(Context& ctx, const ValidationReport& r) {
  ctx.err << "scenario rejected:\n";
  for (const Violation& v : r.violations) ctx.err << "  " << v.message << '\n';
}

int finish_witness(Context& ctx, const WitnessDocument& w, int n, const ConstructionTrace& trace, const std::string& out) {
  ctx.out << "length: " << w.length << '\n';
  print_trace(ctx, trace);
  const std::string text = witness_to_json(w, n).dump(2) + "\n";
  if (out.empty()) {
    ctx.out << text;
  } else {
    emit(ctx, out, text);
    ctx.out << "witness written to " << out << '\n';
  }
  return ok;
}

// gen ---------------------------------------------------------------------

struct GenArgs {
  int n = 0;
  std::string format = "json";
  std::string out;
};

int gen(Context& ctx, const GenArgs& a) {
  require_dimension(ctx, a.n);
  if (a.format == "dot") {
    emit(ctx, a.out, to_dot(a.n));
    return ok;
  }
  const BalancedHypercube g(a.n, ctx.max_n);
  json vs = json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) vs.push_back(vertex_to_json(v, a.n));
  json es = json::array();
  for (const Edge& e : g.edges()) es.push_back({vertex_to_json(e.u, a.n), vertex_to_json(e.v, a.n)});
  emit(ctx, a.out, json{{"n", a.n}, {"vertices", vs}, {"edges", es}}.dump(2) + "\n");
  return ok;
}

// embed / path ------------------------------------------------------------

struct EmbedArgs {
  std::string scenario;
  std::uint64_t budget = SearchBudget{}.node_limit;
  std::string out;
};

int embed(Context& ctx, const EmbedArgs& a) {
  const FaultScenario s = load_scenario(ctx, a.scenario);
  if (const ValidationReport r = validate(s); !r.ok()) {
    report_violations(ctx, r);
    return invalid;
  }
  const CycleConstruction c = longest_fault_free_cycle(s, {SearchBudget{a.budget}});
  return finish_witness(ctx, {WitnessKind::cycle, c.cycle.vertices, c.cycle.length(), c.trace.labels()}, s.n, c.trace, a.out);
}

struct PathArgs {
  std::string scenario;
  std::string from;
  std::string to;
  std::uint64_t budget = SearchBudget{}.node_limit;
  std::string out;
};

int path(Context& ctx, const PathArgs& a) {
  const FaultScenario s = load_scenario(ctx, a.scenario);
  const VertexId x = parse_address(a.from, s.n);
  const VertexId y = parse_address(a.to, s.n);
  const PathConstruction p = adjacent_fault_free_path(s, x, y, {SearchBudget{a.budget}});
  return finish_witness(ctx, {WitnessKind::path, p.path.vertices, p.path.length(), p.trace.labels()}, s.n, p.trace, a.out);
}

// verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string scenario;
  std::string witness;
  long long length = -1;
};

int verify(Context& ctx, const VerifyArgs& a) {
  const FaultScenario s = load_scenario(ctx, a.scenario);
  WitnessDocument w;
  try {
    w = witness_from_json(read_json(a.witness), s.n);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(a.witness + ": " + e.what());
  }
  const auto full = static_cast<long long>(vertex_count(s.n)) - 2LL * s.vertex_fault_count();
  const auto expected = static_cast<std::size_t>(a.length >= 0 ? a.length : (w.kind == WitnessKind::cycle ? full : full - 1));
  const CheckReport r = w.kind == WitnessKind::cycle ? check_cycle(s, CycleWitness{w.vertices}, expected)
                                                     : check_path(s, PathWitness{w.vertices}, expected);
  ctx.out << (w.kind == WitnessKind::cycle ? "cycle" : "path") << " of " << w.vertices.size() << " vertices, expected length "
          << expected << ": " << (r.valid() ? "valid" : "INVALID") << '\n';
  if (!r.valid()) {
    ctx.out << r.summary() << '\n';
    return invalid;
  }
  return ok;
}

// sweep -------------------------------------------------------------------

struct SweepArgs {
  SweepConfig config;
  std::string out;
  bool quiet_failures = false;
};

int run_sweep(Context& ctx, const SweepArgs& a) {
  require_dimension(ctx, a.config.n);
  const SweepSummary s = sweep(a.config);
  ctx.out << "scenarios: " << s.scenario_count << "\nsucceeded: " << s.success_count << "\nfailed: " << s.failures.size()
          << "\nmax runtime per scenario: " << std::fixed << std::setprecision(2) << s.max_runtime_ms << " ms\n";
  if (a.config.compare_brute_force) {
    ctx.out << "brute force: " << s.brute_equal << " of " << s.brute_compared << " equal, " << s.brute_exceeded
            << " exceeded\n";
  }
  ctx.out << "branch histogram:\n";
  for (const auto& [label, count] : s.branch_histogram) ctx.out << "  " << std::left << std::setw(22) << label << count << '\n';
  if (!a.quiet_failures) {
    for (const SweepFailure& f : s.failures) {
      ctx.out << "FAILED " << scenario_to_json(f.input.scenario).dump() << ": " << f.error << '\n';
    }
  }
  if (!a.out.empty()) {
    emit(ctx, a.out, sweep_to_json(a.config, s).dump(2) + "\n");
    ctx.out << "report written to " << a.out << '\n';
  }
  return s.all_passed() ? ok : construction_failed;
}

// table1 ------------------------------------------------------------------

struct Table1Args {
  std::string format = "text";
  std::string write_dir;
};

int table1(Context& ctx, const Table1Args& a) {
  const auto& rows = table1_catalog();
  bool all_valid = true;
  json doc = json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Table1Row& row = rows[r];
    bool valid = true;
    for (int which = 0; which < 2; ++which) {
      const FaultScenario s = table1_scenario(static_cast<int>(r), which);
      valid = valid && check_cycle(s, row.cycle, 14).valid();
      if (!a.write_dir.empty()) {
        const std::filesystem::path dir(a.write_dir);
        std::filesystem::create_directories(dir);
        const std::string stem = "row" + std::to_string(r + 1) + (which ? "b" : "a");
        emit(ctx, (dir / (stem + "_scenario.json")).string(), scenario_to_json(s).dump(2) + "\n");
        emit(ctx, (dir / (stem + "_witness.json")).string(),
             witness_to_json({WitnessKind::cycle, row.cycle.vertices, 14, {}}, 2).dump(2) + "\n");
      }
    }
    all_valid = all_valid && valid;
    if (a.format == "json") {
      WitnessDocument w{WitnessKind::cycle, row.cycle.vertices, 14, {}};
      doc.push_back({{"faulty_vertices", {vertex_to_json(row.faulty_vertices[0], 2), vertex_to_json(row.faulty_vertices[1], 2)}},
                     {"cycle", witness_to_json(w, 2)},
                     {"valid", valid}});
      continue;
    }
    ctx.out << "v in {" << format_vertex(row.faulty_vertices[0], 2) << ", " << format_vertex(row.faulty_vertices[1], 2) << "}: ";
    for (VertexId v : row.cycle.vertices) ctx.out << format_vertex(v, 2) << ' ';
    ctx.out << (valid ? "valid" : "INVALID") << '\n';
  }
  if (a.format == "json") {
    ctx.out << json{{"faulty_edge", {vertex_to_json(table1_faulty_edge().u, 2), vertex_to_json(table1_faulty_edge().v, 2)}},
                    {"rows", doc}}
                   .dump(2)
            << '\n';
  } else {
    ctx.out << "faulty edge " << format_edge(table1_faulty_edge(), 2) << "; " << (all_valid ? "all rows valid" : "some rows INVALID")
            << '\n';
  }
  return all_valid ? ok : invalid;
}

// export ------------------------------------------------------------------

struct ExportArgs {
  int n = 0;
  std::string scenario;
  std::string witness;
  std::string format = "dot";
  std::string out;
};

int export_graph(Context& ctx, const ExportArgs& a) {
  FaultScenario s;
  if (!a.scenario.empty()) {
    s = load_scenario(ctx, a.scenario);
  } else if (a.n > 0) {
    s.n = a.n;
    require_dimension(ctx, s.n);
  } else {
    throw UsageError("export needs --scenario or --n");
  }
  std::optional<WitnessDocument> w;
  if (!a.witness.empty()) w = witness_from_json(read_json(a.witness), s.n);
  if (a.format == "dot") {
    DotStyle style;
    style.faults = &s;
    if (w) {
      style.witness = &w->vertices;
      style.witness_is_cycle = w->kind == WitnessKind::cycle;
    }
    emit(ctx, a.out, to_dot(s.n, style));
    return ok;
  }
  json doc = scenario_to_json(s);
  if (w) doc["witness"] = witness_to_json(*w, s.n);
  emit(ctx, a.out, doc.dump(2) + "\n");
  return ok;
}

int configured_max(Context& ctx, int flag) {
  int value = kDefaultMaxDimension;
  if (flag > 0) {
    value = flag;
  } else if (const char* env = std::getenv("BHCYCLE_MAX_N"); env && *env) {
    try {
      value = std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("BHCYCLE_MAX_N must be an integer, got '") + env + "'");
    }
  }
  if (value < 1 || value > kHardMaxDimension) {
    throw UsageError("maximum dimension must lie in [1, " + std::to_string(kHardMaxDimension) + "]");
  }
  if (value > kDefaultMaxDimension) {
    ctx.err << "warning: dimension cap raised to " << value << "; searches above n = " << kDefaultMaxDimension
            << " may exhaust their budgets\n";
  }
  return value;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Fault-free cycles and paths in balanced hypercubes", "bhcycle"};
  app.require_subcommand(1);
  int max_n_flag = 0;
  app.add_option("--max-n", max_n_flag, "Largest accepted dimension (default 4, or BHCYCLE_MAX_N)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Dump the vertices and edges of BH_n");
  gen_cmd->add_option("--n", gen_args.n, "Dimension")->required();
  gen_cmd->add_option("--format", gen_args.format)->check(CLI::IsMember({"json", "dot"}));
  gen_cmd->add_option("--out", gen_args.out, "Output file (default stdout)");

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "Longest fault-free cycle for a scenario");
  embed_cmd->add_option("--scenario", embed_args.scenario)->required();
  embed_cmd->add_option("--budget", embed_args.budget, "Search node limit per oracle call");
  embed_cmd->add_option("--out", embed_args.out, "Witness JSON file");

  PathArgs path_args;
  auto* path_cmd = app.add_subcommand("path", "Fault-free path between adjacent vertices");
  path_cmd->add_option("--scenario", path_args.scenario)->required();
  path_cmd->add_option("--from", path_args.from, "Address such as (0,1)")->required();
  path_cmd->add_option("--to", path_args.to)->required();
  path_cmd->add_option("--budget", path_args.budget);
  path_cmd->add_option("--out", path_args.out);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a witness against a scenario");
  verify_cmd->add_option("--scenario", verify_args.scenario)->required();
  verify_cmd->add_option("--witness", verify_args.witness)->required();
  verify_cmd->add_option("--length", verify_args.length, "Expected length (default from the fault counts)");

  SweepArgs sweep_args;
  std::string mode = "random", target = "theorem", placement = "mixed";
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the construction over many scenarios");
  sweep_cmd->add_option("--n", sweep_args.config.n)->required();
  sweep_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  sweep_cmd->add_option("--target", target)->check(CLI::IsMember({"theorem", "lemma"}));
  sweep_cmd->add_option("--placement", placement)->check(CLI::IsMember({"uniform", "clustered", "mixed"}));
  sweep_cmd->add_option("--samples", sweep_args.config.samples);
  sweep_cmd->add_option("--seed", sweep_args.config.seed);
  sweep_cmd->add_option("--threads", sweep_args.config.threads, "0 uses every hardware thread");
  sweep_cmd->add_option("--budget", sweep_args.config.budget.node_limit);
  sweep_cmd->add_flag("--brute", sweep_args.config.compare_brute_force, "Compare against exhaustive search (n <= 2)");
  sweep_cmd->add_flag("--quiet-failures", sweep_args.quiet_failures);
  sweep_cmd->add_option("--out", sweep_args.out, "JSON report file");

  Table1Args table1_args;
  auto* table1_cmd = app.add_subcommand("table1", "Print and check the catalog of 14-cycles in BH_2");
  table1_cmd->add_option("--format", table1_args.format)->check(CLI::IsMember({"text", "json"}));
  table1_cmd->add_option("--write-dir", table1_args.write_dir, "Write scenario and witness files per row");

  ExportArgs export_args;
  auto* export_cmd = app.add_subcommand("export", "Render a scenario and optional witness");
  export_cmd->add_option("--n", export_args.n);
  export_cmd->add_option("--scenario", export_args.scenario);
  export_cmd->add_option("--witness", export_args.witness);
  export_cmd->add_option("--format", export_args.format)->check(CLI::IsMember({"dot", "json"}));
  export_cmd->add_option("--out", export_args.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    ctx.max_n = configured_max(ctx, max_n_flag);
    if (*gen_cmd) return gen(ctx, gen_args);
    if (*embed_cmd) return embed(ctx, embed_args);
    if (*path_cmd) return path(ctx, path_args);
    if (*verify_cmd) return verify(ctx, verify_args);
    if (*sweep_cmd) {
      sweep_args.config.mode = mode == "exhaustive" ? SweepMode::exhaustive : SweepMode::random;
      sweep_args.config.target = target == "theorem" ? SweepTarget::theorem : SweepTarget::lemma;
      sweep_args.config.placement = placement == "uniform"     ? FaultPlacement::uniform
                                    : placement == "clustered" ? FaultPlacement::clustered
                                                               : FaultPlacement::mixed;
      return run_sweep(ctx, sweep_args);
    }
    if (*table1_cmd) return table1(ctx, table1_args);
    if (*export_cmd) return export_graph(ctx, export_args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return usage;
  } catch (const OracleFailure& e) {
    err << "construction failed: " << e.what() << "\n  at " << e.instance << '\n';
    return construction_failed;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return invalid;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return invalid;
  } catch (const MalformedAddress& e) {
    err << "malformed address: " << e.what() << '\n';
    return invalid;
  } catch (const NotAnEdge& e) {
    err << "not an edge: " << e.what() << '\n';
    return invalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return construction_failed;
  }
  return usage;
}

}  // namespace bhcycle::cli
