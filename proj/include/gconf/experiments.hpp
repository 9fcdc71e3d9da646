#pragma once

// Seeded random-graph experiments: maturity curves over G(n, p), torsion
// hunting, and comparison of maturity against wedge decompositions.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gconf/graph.hpp"

namespace gconf {

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);
/// Stateless stream: a uniform double in [0, 1) addressed by its keys.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, std::uint64_t slot);

/// Subgraph of K_n with each edge kept with probability p; depends only on
/// (n, p, seed, index).
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed, std::uint64_t index);

/// Wilson score interval at 95%; [0, 1] when trials is zero.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials);

struct Finding {
  std::string kind;  // torsion | conjecture1-counterexample | oracle-mismatch
  Graph graph;
  std::string details;
  std::vector<std::string> explained_by;  // known non-maturity criteria that apply
};

/// Re-evaluates the flagged condition on the graph.
bool reproduces(const Finding& f);

struct SweepConfig {
  std::size_t n = 5;
  std::vector<double> p_grid;
  std::size_t samples_per_p = 100;
  std::uint64_t seed = 1;
  bool condition_on_connected = true;
  double audit_fraction = 0.0;
  std::size_t threads = 0;  // 0: hardware concurrency
};

/// Throws std::invalid_argument on an invalid configuration.
void validate(const SweepConfig& cfg);

struct SweepRecord {
  std::size_t n = 0;
  double p = 0;
  std::size_t samples = 0;
  std::size_t connected = 0;
  std::size_t mature = 0;
  std::size_t torsion_found = 0;
  std::size_t audited = 0;
  double fraction = 0;      // conditional on connected unless configured otherwise
  double raw_fraction = 0;  // mature / samples
  double ci_low = 0;
  double ci_high = 1;
  std::uint64_t seed = 0;
};

struct SweepHooks {
  std::function<void(const SweepRecord&)> on_record;
  const std::atomic<bool>* cancel = nullptr;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<Finding> findings;
  bool complete = true;
};

SweepResult maturity_sweep(const SweepConfig& cfg, const SweepHooks& hooks = {});

std::string csv_header();
std::string csv_row(const SweepRecord& r);
std::string to_csv(const std::vector<SweepRecord>& records);

struct ThresholdEstimate {
  double p_half = 0;  // linear interpolation of the 1/2 crossing
  double band_low = 0;
  double band_high = 0;
};
std::optional<ThresholdEstimate> estimate_threshold(const std::vector<SweepRecord>& records);

/// All graphs on n vertices up to isomorphism, n <= 8, in canonical order.
std::vector<Graph> enumerate_graphs(std::size_t n);

struct ScanConfig {
  std::size_t n_max = 10;
  std::size_t exhaustive_max = 7;
  std::size_t random_n_min = 8;
  std::size_t samples = 1000;
  double p_low = 0.4;
  double p_high = 0.9;
  std::uint64_t seed = 1;
  double audit_fraction = 0.0;
  std::size_t threads = 0;
};

struct ScanResult {
  std::size_t exhaustive_tested = 0;
  std::size_t random_drawn = 0;
  std::size_t random_tested = 0;
  std::size_t mature = 0;
  std::size_t audited = 0;
  std::vector<Finding> findings;
};

ScanResult conjecture_scan(const ScanConfig& cfg);
/// Same test applied to a given corpus; planar or disconnected graphs are skipped.
ScanResult conjecture_scan(const std::vector<Graph>& corpus, double audit_fraction = 0.0, std::uint64_t seed = 1);

/// Writes one graph document per finding plus manifest.json.
void write_findings(const std::string& dir, const std::vector<Finding>& findings, const nlohmann::json& parameters);

/// Runs fn(i) for i in [0, count) on a pool; results come back in index order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, const std::function<T(std::size_t)>& fn);

}  // namespace gconf

#include "gconf/detail/parallel.hpp"
