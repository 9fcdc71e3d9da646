#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "gconf/catalog.hpp"
#include "gconf/dspace.hpp"
#include "gconf/experiments.hpp"
#include "gconf/graph_io.hpp"
#include "gconf/intersection.hpp"
#include "gconf/linking.hpp"

using namespace gconf;
using nlohmann::json;

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted = true; }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::size_t subdivide = 0;
  double audit_fraction = 0.0;
  std::vector<std::string> args;
};

void emit(const Options& o, const std::string& command, const std::optional<std::string>& fp, const json& result,
          const std::string& text) {
  if (o.json) {
    json out;
    out["command"] = command;
    out["arguments"] = o.args;
    out["input_fingerprint"] = fp ? json(*fp) : json(nullptr);
    out["result"] = result;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

struct Input {
  Graph graph;
  std::string fingerprint;
};

Input load_input(const std::string& spec, const Options& o) {
  Graph g = resolve_graph(spec);
  std::string fp = fingerprint(g);
  if (o.subdivide) g = subdivide(g, o.subdivide);
  return {std::move(g), std::move(fp)};
}

std::size_t vertex_by_label(const Graph& g, const std::string& label) {
  const auto v = g.find_vertex(label);
  if (!v) throw UsageError("no vertex labelled '" + label + "'");
  return *v;
}

std::pair<std::size_t, std::size_t> pick_pair(const Graph& g, const std::string& u, const std::string& v) {
  if (u.empty() != v.empty()) throw UsageError("--u and --v must be given together");
  if (!u.empty()) {
    const auto a = vertex_by_label(g, u), b = vertex_by_label(g, v);
    if (a == b) throw UsageError("--u and --v must differ");
    return {a, b};
  }
  if (!g.marked()) throw UsageError("graph has no marked pair; pass --u and --v");
  return {g.marked()->u, g.marked()->v};
}

std::string str(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

std::string element_text(const CokernelElement& e) {
  std::string s = "(" + str(e.free) + ")";
  if (!e.torsion.empty()) s += " torsion (" + str(e.torsion) + ")";
  return s;
}

std::string betti_text(const BettiReport& r) {
  std::string s;
  s += fmt::format("b0 {}\n", r.b0_config);
  s += fmt::format("b1 {}\n", r.b1_config);
  s += fmt::format("b2 {}\n", r.b2_config);
  s += fmt::format("graph b1 {}  sigma {}\n", r.b1_graph, r.sigma);
  s += fmt::format("Q {}\n", AbelianPresentation{r.q_rank, r.q_torsion}.to_string());
  if (r.special_case != SpecialCase::none) s += fmt::format("special case {}\n", to_string(r.special_case));
  s += fmt::format("mature {}\n", r.mature ? (*r.mature ? "true" : "false") : "n/a");
  for (const auto& why : r.reasons) s += "  " + why + "\n";
  return s;
}

int cmd_betti(const Options& o, const std::string& spec) {
  const auto in = load_input(spec, o);
  const auto r = betti_f2(in.graph);
  emit(o, "betti", in.fingerprint, to_json(r), betti_text(r));
  return 0;
}

int cmd_mature(const Options& o, const std::string& spec) {
  const auto in = load_input(spec, o);
  json result;
  std::string text;
  if (is_arc(in.graph)) {
    result = {{"mature", nullptr}, {"reasons", {"arc"}}};
    text = "n/a\n  arc\n";
  } else {
    const auto m = is_mature(in.graph);
    result = {{"mature", m.mature}, {"reasons", m.reasons}};
    text = m.mature ? "true\n" : "false\n";
    for (const auto& why : m.reasons) text += "  " + why + "\n";
  }
  emit(o, "mature", in.fingerprint, result, text);
  return 0;
}

int cmd_verify(const Options& o, const std::string& spec, std::size_t oracle_k) {
  const auto in = load_input(spec, o);
  const auto v = verify(in.graph, oracle_k);
  std::string text = v.match() ? "match\n" : "MISMATCH\n";
  text += fmt::format("oracle  b0 {} b1 {} b2 {} torsion [{}]  ({} / {} / {} cells)\n", v.oracle.b0, v.oracle.b1,
                      v.oracle.b2, str(v.oracle.torsion1), v.oracle.cells0, v.oracle.cells1, v.oracle.cells2);
  text += fmt::format("formula b0 {} b1 {} b2 {} Q {}\n", v.formula.b0_config, v.formula.b1_config,
                      v.formula.b2_config, AbelianPresentation{v.formula.q_rank, v.formula.q_torsion}.to_string());
  for (const auto& m : v.mismatches) text += "  " + m + "\n";
  json result = to_json(v);
  result["oracle_subdivisions"] = oracle_k;
  emit(o, "verify", in.fingerprint, result, text);
  return v.match() ? 0 : 1;
}

int cmd_linking(const Options& o, const std::string& spec, const std::string& us, const std::string& vs) {
  const auto in = load_input(spec, o);
  const auto [u, v] = pick_pair(in.graph, us, vs);
  const LinkingContext ctx(in.graph, u, v);
  const auto r = linking_report(ctx);
  const Graph& h = ctx.graph();
  std::string text = fmt::format("u {}  v {}{}\n", h.label(r.u), h.label(r.v), r.subdivided ? "  (edge subdivided)" : "");
  text += fmt::format("Q {}\n", r.q.to_string());
  text += fmt::format("Gamma0 components {}  cycles {}\n", r.gamma0_b0, r.gamma0_cycles.size());
  for (std::size_t i = 0; i < r.lk_values.size(); ++i)
    text += fmt::format("  lk[{}] {}   tau {}\n", i, element_text(r.lk_values[i]), element_text(r.tau_lk_values[i]));
  text += fmt::format("rank A {}  rank A+tauA {}\n", r.A_rank, r.A_plus_tauA_rank);
  if (r.torsion_in_image) text += "torsion in image\n";
  for (const auto& n : r.notes) text += "  " + n + "\n";
  emit(o, "linking", in.fingerprint, to_json(r, h), text);
  return 0;
}

int cmd_add_edge(const Options& o, const std::string& spec, const std::string& us, const std::string& vs) {
  const auto in = load_input(spec, o);
  const auto [u, v] = pick_pair(in.graph, us, vs);
  if (in.graph.adjacent(u, v)) throw UsageError("u and v are already adjacent");
  const LinkingContext ctx(in.graph, u, v);
  const auto r = add_edge_report(ctx);
  auto q = [](const BettiReport& b) { return AbelianPresentation{b.q_rank, b.q_torsion}.to_string(); };
  std::string text;
  text += fmt::format("before b1 {} b2 {} Q {}\n", r.before.b1_config, r.before.b2_config, q(r.before));
  text += fmt::format("after  b1 {} b2 {} Q {}\n", r.after.b1_config, r.after.b2_config, q(r.after));
  text += fmt::format("rank A+tauA {}  rank G {}  rank X {}\n", r.linking.A_plus_tauA_rank, r.G_rank, r.X_rank);
  text += fmt::format("q identity {}  b2 identity {}\n", r.q_identity, r.b2_identity);
  for (const auto& f : r.flags) text += "  " + f + "\n";
  emit(o, "add-edge", in.fingerprint, to_json(r, ctx.graph()), text);
  return 0;
}

int cmd_gen(const Options& o, const std::string& name, const std::vector<long>& params, const std::string& out) {
  Graph g = generate(name, params);
  if (o.subdivide) g = subdivide(g, o.subdivide);
  const std::string doc = emit_graph(g);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << doc << "\n";
  }
  json result = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
  if (out.empty())
    result["graph"] = graph_to_json(g);
  else
    result["out"] = out;
  emit(o, "gen", fingerprint(g), result, out.empty() ? doc + "\n" : fmt::format("wrote {}\n", out));
  return 0;
}

json record_json(const SweepRecord& r) {
  return {{"n", r.n},
          {"p", r.p},
          {"samples", r.samples},
          {"connected", r.connected},
          {"mature", r.mature},
          {"torsion_found", r.torsion_found},
          {"audited", r.audited},
          {"fraction", r.fraction},
          {"raw_fraction", r.raw_fraction},
          {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},
          {"seed", r.seed}};
}

json findings_summary(const std::vector<Finding>& fs) {
  json by_kind = json::object();
  for (const auto& f : fs) by_kind[f.kind] = by_kind.value(f.kind, 0) + 1;
  return {{"count", fs.size()}, {"by_kind", by_kind}};
}

int cmd_sweep(const Options& o, SweepConfig cfg, const std::string& out, const std::string& findings_dir) {
  cfg.audit_fraction = o.audit_fraction;
  validate(cfg);
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw UsageError("cannot write " + out);
    file << csv_header() << std::flush;
  } else if (!o.json) {
    std::cout << csv_header() << std::flush;
  }
  SweepHooks hooks;
  hooks.cancel = &g_interrupted;
  hooks.on_record = [&](const SweepRecord& r) {
    if (file.is_open())
      file << csv_row(r) << std::flush;
    else if (!o.json)
      std::cout << csv_row(r) << std::flush;
  };
  std::signal(SIGINT, on_sigint);
  const auto res = maturity_sweep(cfg, hooks);
  std::signal(SIGINT, SIG_DFL);

  json params = {{"n", cfg.n},           {"p_grid", cfg.p_grid},
                 {"samples", cfg.samples_per_p}, {"seed", cfg.seed},
                 {"condition_on_connected", cfg.condition_on_connected},
                 {"audit_fraction", cfg.audit_fraction}};
  if (!findings_dir.empty()) write_findings(findings_dir, res.findings, params);

  json result = {{"parameters", params}, {"complete", res.complete}, {"findings", findings_summary(res.findings)}};
  json records = json::array();
  for (const auto& r : res.records) records.push_back(record_json(r));
  result["records"] = records;
  const auto t = estimate_threshold(res.records);
  result["threshold"] = t ? json{{"p_half", t->p_half}, {"band_low", t->band_low}, {"band_high", t->band_high}}
                          : json(nullptr);
  if (!out.empty()) result["out"] = out;

  std::string text;
  if (!out.empty()) text += fmt::format("wrote {} records to {}\n", res.records.size(), out);
  if (t) text += fmt::format("threshold p ~ {:.4f}  band [{:.4f}, {:.4f}]\n", t->p_half, t->band_low, t->band_high);
  if (!res.findings.empty()) text += fmt::format("findings {}\n", res.findings.size());
  if (o.json || !out.empty()) {
    emit(o, "sweep", sha256_hex(params.dump()), result, text);
  } else {
    std::cerr << text;
  }
  if (!res.complete) {
    std::cerr << "interrupted; partial results written\n";
    return 2;
  }
  return 0;
}

int cmd_scan(const Options& o, ScanConfig cfg, const std::string& out) {
  cfg.audit_fraction = o.audit_fraction;
  if (cfg.n_max < 5) throw UsageError("--n-max must be at least 5");
  const auto res = conjecture_scan(cfg);
  json params = {{"n_max", cfg.n_max},       {"exhaustive_max", cfg.exhaustive_max},
                 {"samples", cfg.samples},   {"p_low", cfg.p_low},
                 {"p_high", cfg.p_high},     {"seed", cfg.seed},
                 {"audit_fraction", cfg.audit_fraction}};
  if (!out.empty()) write_findings(out, res.findings, params);
  json fs = json::array();
  for (const auto& f : res.findings)
    fs.push_back({{"kind", f.kind}, {"details", f.details}, {"explained_by", f.explained_by}, {"graph", fingerprint(f.graph)}});
  json result = {{"parameters", params},
                 {"exhaustive_tested", res.exhaustive_tested},
                 {"random_drawn", res.random_drawn},
                 {"random_tested", res.random_tested},
                 {"mature", res.mature},
                 {"audited", res.audited},
                 {"findings", findings_summary(res.findings)},
                 {"finding_list", fs}};
  std::string text = fmt::format("exhaustive {}  random {} of {}  mature {}  audited {}\n", res.exhaustive_tested,
                                 res.random_tested, res.random_drawn, res.mature, res.audited);
  text += fmt::format("findings {}\n", res.findings.size());
  for (const auto& f : res.findings) {
    text += fmt::format("  {}: {}", f.kind, f.details);
    if (!f.explained_by.empty()) {
      text += " [";
      for (std::size_t i = 0; i < f.explained_by.size(); ++i) text += (i ? ", " : "") + f.explained_by[i];
      text += "]";
    }
    text += "\n";
  }
  if (!out.empty()) text += fmt::format("wrote {}\n", out);
  emit(o, "scan", sha256_hex(params.dump()), result, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  for (int i = 1; i < argc; ++i) o.args.emplace_back(argv[i]);

  CLI::App app{"Two-point configuration spaces of graphs"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--subdivide", o.subdivide, "subdivide every edge k times first");
  app.add_option("--audit-fraction", o.audit_fraction, "share of samples checked against the oracle")
      ->check(CLI::Range(0.0, 1.0));

  std::string spec, us, vs, out, findings_dir, name;
  std::size_t oracle_k = 2;
  std::vector<long> params;
  std::function<int()> run;

  auto graph_cmd = [&](const std::string& cmd, const std::string& help) {
    auto* s = app.add_subcommand(cmd, help)->fallthrough();
    s->add_option("graph", spec, "graph file or gen:<name>:<params>")->required();
    return s;
  };
  graph_cmd("betti", "Betti numbers of the two-point configuration space")->callback([&] {
    run = [&] { return cmd_betti(o, spec); };
  });
  graph_cmd("mature", "maturity and the reasons against it")->callback([&] { run = [&] { return cmd_mature(o, spec); }; });
  auto* verify_cmd = graph_cmd("verify", "compare the formulas with the cellular oracle");
  verify_cmd->add_option("--oracle-subdivisions", oracle_k, "edge subdivisions for the oracle complex")
      ->check(CLI::Range(2, 6));
  verify_cmd->callback([&] { run = [&] { return cmd_verify(o, spec, oracle_k); }; });
  for (const std::string cmd : {"linking", "add-edge"}) {
    auto* s = graph_cmd(cmd, cmd == "linking" ? "linking homomorphism for a vertex pair"
                                              : "effect of adding the edge uv");
    s->add_option("--u", us, "vertex label (default: marked pair)");
    s->add_option("--v", vs, "vertex label (default: marked pair)");
    s->callback([&, cmd] {
      run = [&, cmd] { return cmd == "linking" ? cmd_linking(o, spec, us, vs) : cmd_add_edge(o, spec, us, vs); };
    });
  }

  auto* gen = app.add_subcommand("gen", "emit a named graph")->fallthrough();
  gen->add_option("name", name, "generator name")->required();
  gen->add_option("params", params, "integer parameters");
  gen->add_option("--out", out, "output file");
  gen->callback([&] { run = [&] { return cmd_gen(o, name, params, out); }; });

  SweepConfig sweep_cfg;
  bool raw = false;
  auto* sweep = app.add_subcommand("sweep", "maturity fraction over G(n, p)")->fallthrough();
  sweep->add_option("--n", sweep_cfg.n, "vertices")->required()->check(CLI::Range(1, 64));
  sweep->add_option("--p-grid", sweep_cfg.p_grid, "comma separated probabilities")->required()->delimiter(',');
  sweep->add_option("--samples", sweep_cfg.samples_per_p, "samples per grid point")->required();
  sweep->add_option("--seed", sweep_cfg.seed, "seed")->required();
  sweep->add_option("--out", out, "CSV file");
  sweep->add_option("--findings", findings_dir, "directory for findings");
  sweep->add_option("--threads", sweep_cfg.threads, "worker threads (0: all cores)");
  sweep->add_flag("--raw", raw, "fraction over all samples instead of connected ones");
  sweep->callback([&] {
    sweep_cfg.condition_on_connected = !raw;
    run = [&] { return cmd_sweep(o, sweep_cfg, out, findings_dir); };
  });

  ScanConfig scan_cfg;
  auto* scan = app.add_subcommand("scan", "search for counterexamples and torsion")->fallthrough();
  scan->add_option("--n-max", scan_cfg.n_max, "largest vertex count")->required();
  scan->add_option("--samples", scan_cfg.samples, "random samples")->required();
  scan->add_option("--seed", scan_cfg.seed, "seed")->required();
  scan->add_option("--out", out, "findings directory");
  scan->add_option("--exhaustive-max", scan_cfg.exhaustive_max, "exhaustive up to this many vertices")
      ->check(CLI::Range(1, 8));
  scan->add_option("--threads", scan_cfg.threads, "worker threads (0: all cores)");
  scan->callback([&] {
    scan_cfg.random_n_min = scan_cfg.exhaustive_max + 1;
    run = [&] { return cmd_scan(o, scan_cfg, out); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
