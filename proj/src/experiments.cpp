#include "gconf/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "gconf/dspace.hpp"
#include "gconf/graph_io.hpp"
#include "gconf/intersection.hpp"
#include "gconf/structure.hpp"

namespace gconf {

namespace {

constexpr std::uint64_t kGnpStream = 0;
constexpr std::uint64_t kScanStream = 1;
constexpr std::uint64_t kAuditStream = 2;

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, std::uint64_t slot) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ stream);
  h = mix64(h ^ index);
  h = mix64(h ^ slot);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Graph sample_gnp(std::size_t n, double p, std::uint64_t seed, std::uint64_t index) {
  if (n < 1) throw std::invalid_argument("G(n, p) needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("G(n, p) needs 0 <= p <= 1");
  Graph g(n);
  std::uint64_t slot = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++slot)
      if (counter_uniform(seed, kGnpStream, index, slot) < p) g.add_edge(i, j);
  return g;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double m = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / m;
  const double denom = 1.0 + z * z / m;
  const double centre = (ph + z * z / (2 * m)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / m + z * z / (4 * m * m)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

std::vector<std::string> known_criteria(const StructureReport& s) {
  std::vector<std::string> out;
  if (!s.univalent_vertices.empty()) out.push_back("univalent vertex");
  if (s.separating_edge) out.push_back("separating closed edge");
  if (s.double_edge) out.push_back("double edge");
  return out;
}

struct Evaluation {
  bool tested = false;
  bool mature = false;
  bool audited = false;
  std::vector<Finding> findings;
};

// Full treatment of one non-planar connected graph for the scan.
Evaluation evaluate_for_scan(const Graph& g, bool audit) {
  Evaluation ev;
  if (g.edge_count() == 0 || !is_connected(g) || is_planar(g)) return ev;
  ev.tested = true;
  const QInvariants q = q_invariants(g);
  ev.mature = q.rank == 0 && q.torsion.empty();
  const StructureReport s = structure(g);
  const bool witness = s.wedge || s.double_wedge;
  if (!q.torsion.empty())
    ev.findings.push_back({"torsion", g, "Q = " + AbelianPresentation{q.rank, q.torsion}.to_string(), {}});
  if (ev.mature == witness) {
    Finding f{"conjecture1-counterexample", g,
              ev.mature ? "mature although a wedge or double wedge witness exists"
                        : "not mature (Q = " + AbelianPresentation{q.rank, q.torsion}.to_string() +
                              ") and no wedge or double wedge witness",
              known_criteria(s)};
    ev.findings.push_back(std::move(f));
  }
  if (audit) {
    ev.audited = true;
    const Verdict v = verify(g);
    if (!v.match()) {
      std::string d;
      for (const auto& m : v.mismatches) d += (d.empty() ? "" : "; ") + m;
      ev.findings.push_back({"oracle-mismatch", g, d, {}});
    }
  }
  return ev;
}

struct SampleOutcome {
  bool connected = false;
  bool mature = false;
  bool torsion = false;
  bool audited = false;
  std::vector<Finding> findings;
};

SampleOutcome evaluate_sample(const Graph& g, bool audit) {
  SampleOutcome out;
  out.connected = is_connected(g);
  if (!out.connected || g.edge_count() == 0 || is_arc(g)) return out;
  if (!is_circle(g)) {
    const QInvariants q = q_invariants(g);
    out.mature = q.rank == 0 && q.torsion.empty();
    if (!q.torsion.empty()) {
      out.torsion = true;
      out.findings.push_back({"torsion", g, "Q = " + AbelianPresentation{q.rank, q.torsion}.to_string(), {}});
    }
  }
  if (audit) {
    out.audited = true;
    const Verdict v = verify(g);
    if (!v.match()) {
      std::string d;
      for (const auto& m : v.mismatches) d += (d.empty() ? "" : "; ") + m;
      out.findings.push_back({"oracle-mismatch", g, d, {}});
    }
  }
  return out;
}

}  // namespace

bool reproduces(const Finding& f) {
  const Graph g = load_graph(emit_graph(f.graph));
  if (f.kind == "torsion") return is_connected(g) && !is_arc(g) && !is_circle(g) && !q_invariants(g).torsion.empty();
  if (f.kind == "oracle-mismatch") return !verify(g).match();
  if (f.kind == "conjecture1-counterexample") {
    const Evaluation ev = evaluate_for_scan(g, false);
    return std::any_of(ev.findings.begin(), ev.findings.end(),
                       [](const Finding& x) { return x.kind == "conjecture1-counterexample"; });
  }
  return false;
}

void validate(const SweepConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("sweep needs n >= 1");
  if (cfg.samples_per_p < 1) throw std::invalid_argument("sweep needs at least one sample per p");
  if (cfg.p_grid.empty()) throw std::invalid_argument("sweep needs a p grid");
  for (std::size_t i = 0; i < cfg.p_grid.size(); ++i) {
    if (!(cfg.p_grid[i] >= 0.0 && cfg.p_grid[i] <= 1.0)) throw std::invalid_argument("p values must lie in [0, 1]");
    if (i > 0 && !(cfg.p_grid[i] > cfg.p_grid[i - 1])) throw std::invalid_argument("p grid must be strictly increasing");
  }
  if (!(cfg.audit_fraction >= 0.0 && cfg.audit_fraction <= 1.0))
    throw std::invalid_argument("audit fraction must lie in [0, 1]");
}

SweepResult maturity_sweep(const SweepConfig& cfg, const SweepHooks& hooks) {
  validate(cfg);
  SweepResult result;
  for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
    if (hooks.cancel && hooks.cancel->load()) {
      result.complete = false;
      break;
    }
    const double p = cfg.p_grid[pi];
    const auto outcomes = parallel_map<SampleOutcome>(cfg.samples_per_p, cfg.threads, [&](std::size_t i) {
      const Graph g = sample_gnp(cfg.n, p, cfg.seed, i);
      const std::uint64_t task = pi * cfg.samples_per_p + i;
      const bool audit = counter_uniform(cfg.seed, kAuditStream, task, 0) < cfg.audit_fraction;
      return evaluate_sample(g, audit);
    });
    SweepRecord r;
    r.n = cfg.n;
    r.p = p;
    r.samples = cfg.samples_per_p;
    r.seed = cfg.seed;
    for (const auto& o : outcomes) {
      r.connected += o.connected;
      r.mature += o.mature;
      r.torsion_found += o.torsion;
      r.audited += o.audited;
      for (const auto& f : o.findings) result.findings.push_back(f);
    }
    r.raw_fraction = static_cast<double>(r.mature) / static_cast<double>(r.samples);
    const std::size_t denom = cfg.condition_on_connected ? r.connected : r.samples;
    r.fraction = denom ? static_cast<double>(r.mature) / static_cast<double>(denom) : 0.0;
    std::tie(r.ci_low, r.ci_high) = wilson_interval(r.mature, denom);
    result.records.push_back(r);
    if (hooks.on_record) hooks.on_record(r);
  }
  return result;
}

std::string csv_header() { return "n,p,samples,connected,mature,torsion_found,fraction,ci_low,ci_high,seed\n"; }

std::string csv_row(const SweepRecord& r) {
  return fmt::format("{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{}\n", r.n, r.p, r.samples, r.connected, r.mature,
                     r.torsion_found, r.fraction, r.ci_low, r.ci_high, r.seed);
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::string out = csv_header();
  for (const auto& r : records) out += csv_row(r);
  return out;
}

std::optional<ThresholdEstimate> estimate_threshold(const std::vector<SweepRecord>& records) {
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const auto& a = records[i];
    const auto& b = records[i + 1];
    if (a.fraction < 0.5 && b.fraction >= 0.5) {
      ThresholdEstimate t;
      t.p_half = a.p + (0.5 - a.fraction) * (b.p - a.p) / (b.fraction - a.fraction);
      t.band_low = t.p_half;
      t.band_high = t.p_half;
      for (const auto& r : records)
        if (r.ci_low <= 0.5 && r.ci_high >= 0.5) {
          t.band_low = std::min(t.band_low, r.p);
          t.band_high = std::max(t.band_high, r.p);
        }
      return t;
    }
  }
  return std::nullopt;
}

namespace {

using Adjacency = std::array<std::uint8_t, 8>;

std::uint32_t encode(const Adjacency& adj, const std::vector<std::size_t>& order) {
  std::uint32_t code = 0;
  std::uint32_t bit = 1;
  for (std::size_t j = 1; j < order.size(); ++j)
    for (std::size_t i = 0; i < j; ++i, bit <<= 1)
      if (adj[order[i]] >> order[j] & 1) code |= bit;
  return code;
}

// Minimum code over orderings that list vertices by an isomorphism invariant
// and permute freely only inside each invariant class.
std::uint32_t canonical(const Adjacency& adj, std::size_t n) {
  std::vector<int> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = std::popcount(static_cast<unsigned>(adj[v]));
  std::vector<std::vector<int>> inv(n);
  for (std::size_t v = 0; v < n; ++v) {
    inv[v].push_back(deg[v]);
    std::vector<int> nd;
    for (std::size_t w = 0; w < n; ++w)
      if (adj[v] >> w & 1) nd.push_back(deg[w]);
    std::sort(nd.begin(), nd.end());
    inv[v].insert(inv[v].end(), nd.begin(), nd.end());
  }
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return inv[a] < inv[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && inv[order[j]] == inv[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::uint32_t best = UINT32_MAX;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      best = std::min(best, encode(adj, order));
      return;
    }
    auto [lo, hi] = classes[c];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      rec(c + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
  return best;
}

Adjacency decode(std::uint32_t code, std::size_t n) {
  Adjacency adj{};
  std::uint32_t bit = 1;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, bit <<= 1)
      if (code & bit) {
        adj[i] |= static_cast<std::uint8_t>(1u << j);
        adj[j] |= static_cast<std::uint8_t>(1u << i);
      }
  return adj;
}

}  // namespace

std::vector<Graph> enumerate_graphs(std::size_t n) {
  if (n < 1 || n > 8) throw std::invalid_argument("graph enumeration supports 1 <= n <= 8");
  std::set<std::uint32_t> level{0};
  for (std::size_t k = 2; k <= n; ++k) {
    std::set<std::uint32_t> next;
    for (std::uint32_t code : level) {
      const Adjacency base = decode(code, k - 1);
      for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        Adjacency adj = base;
        adj[k - 1] = static_cast<std::uint8_t>(mask);
        for (std::size_t i = 0; i + 1 < k; ++i)
          if (mask >> i & 1) adj[i] |= static_cast<std::uint8_t>(1u << (k - 1));
        next.insert(canonical(adj, k));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (std::uint32_t code : level) {
    const Adjacency adj = decode(code, n);
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (adj[i] >> j & 1) g.add_edge(i, j);
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

void collect(ScanResult& r, Evaluation&& ev) {
  if (!ev.tested) return;
  r.mature += ev.mature;
  r.audited += ev.audited;
  for (auto& f : ev.findings) r.findings.push_back(std::move(f));
}

}  // namespace

ScanResult conjecture_scan(const std::vector<Graph>& corpus, double audit_fraction, std::uint64_t seed) {
  ScanResult r;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const bool audit = counter_uniform(seed, kAuditStream, i, 1) < audit_fraction;
    Evaluation ev = evaluate_for_scan(corpus[i], audit);
    r.exhaustive_tested += ev.tested;
    collect(r, std::move(ev));
  }
  return r;
}

ScanResult conjecture_scan(const ScanConfig& cfg) {
  if (cfg.n_max < 5) throw std::invalid_argument("scan needs n_max >= 5");
  if (!(cfg.p_low > 0.0 && cfg.p_low < cfg.p_high && cfg.p_high <= 1.0))
    throw std::invalid_argument("scan needs 0 < p_low < p_high <= 1");
  ScanResult r;
  std::vector<Graph> exhaustive;
  for (std::size_t n = 1; n <= std::min(cfg.n_max, cfg.exhaustive_max); ++n)
    for (auto& g : enumerate_graphs(n))
      if (is_connected(g) && !is_planar(g)) exhaustive.push_back(std::move(g));

  const auto exhaustive_eval = parallel_map<Evaluation>(exhaustive.size(), cfg.threads, [&](std::size_t i) {
    const bool audit = counter_uniform(cfg.seed, kAuditStream, i, 1) < cfg.audit_fraction;
    return evaluate_for_scan(exhaustive[i], audit);
  });
  for (auto ev : exhaustive_eval) {
    r.exhaustive_tested += ev.tested;
    collect(r, std::move(ev));
  }

  const std::size_t lo = std::max(cfg.random_n_min, std::size_t{1});
  if (cfg.n_max >= lo && cfg.samples > 0) {
    const std::size_t span = cfg.n_max - lo + 1;
    auto random_eval = parallel_map<Evaluation>(cfg.samples, cfg.threads, [&](std::size_t i) {
      const std::size_t n = lo + std::min(span - 1, static_cast<std::size_t>(counter_uniform(cfg.seed, kScanStream, i, 0) *
                                                                               static_cast<double>(span)));
      const double p = cfg.p_low + (cfg.p_high - cfg.p_low) * counter_uniform(cfg.seed, kScanStream, i, 1);
      const Graph g = sample_gnp(n, p, cfg.seed, i);
      const bool audit = counter_uniform(cfg.seed, kAuditStream, i, 2) < cfg.audit_fraction;
      return evaluate_for_scan(g, audit);
    });
    r.random_drawn = cfg.samples;
    for (auto& ev : random_eval) {
      r.random_tested += ev.tested;
      collect(r, std::move(ev));
    }
  }
  return r;
}

void write_findings(const std::string& dir, const std::vector<Finding>& findings, const nlohmann::json& parameters) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["parameters"] = parameters;
  manifest["count"] = findings.size();
  std::map<std::string, std::size_t> by_kind;
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < findings.size(); ++i) {
    const Finding& f = findings[i];
    ++by_kind[f.kind];
    const std::string file = fmt::format("{:04}-{}.json", i, f.kind);
    nlohmann::json doc;
    doc["kind"] = f.kind;
    doc["details"] = f.details;
    doc["explained_by"] = f.explained_by;
    doc["fingerprint"] = fingerprint(f.graph);
    doc["graph"] = graph_to_json(f.graph);
    std::ofstream(fs::path(dir) / file) << doc.dump(2) << "\n";
    list.push_back({{"file", file},
                    {"kind", f.kind},
                    {"fingerprint", doc["fingerprint"]},
                    {"details", f.details},
                    {"explained_by", f.explained_by}});
  }
  manifest["by_kind"] = by_kind;
  manifest["findings"] = list;
  std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << "\n";
}

}  // namespace gconf
