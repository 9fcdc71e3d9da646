#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "gconf/catalog.hpp"
#include "gconf/experiments.hpp"
#include "gconf/graph_io.hpp"
#include "gconf/structure.hpp"

using namespace gconf;

TEST_CASE("gnp sampling is addressable and deterministic") {
  CHECK(sample_gnp(8, 0.5, 42, 17) == sample_gnp(8, 0.5, 42, 17));
  CHECK_FALSE(sample_gnp(8, 0.5, 42, 17) == sample_gnp(8, 0.5, 42, 18));
  std::size_t full = 0, empty = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    full += sample_gnp(5, 0.999, 3, i).edge_count() == 10;
    empty += sample_gnp(5, 0.001, 3, i).edge_count() == 0;
  }
  CHECK(full >= 190);
  CHECK(empty >= 190);
  CHECK(sample_gnp(5, 1.0, 3, 0).edge_count() == 10);
  CHECK_THROWS(sample_gnp(0, 0.5, 1, 0));
  CHECK_THROWS(sample_gnp(4, 1.5, 1, 0));
}

TEST_CASE("edge frequency matches p") {
  std::size_t kept = 0;
  const std::size_t trials = 4000;
  for (std::uint64_t i = 0; i < trials; ++i) kept += sample_gnp(2, 0.3, 9, i).edge_count();
  const double f = static_cast<double>(kept) / trials;
  CHECK(f > 0.27);
  CHECK(f < 0.33);
}

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(0, 0);
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
  const auto [a, b] = wilson_interval(50, 100);
  CHECK(a == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(b == doctest::Approx(0.5962).epsilon(1e-3));
  const auto [c, d] = wilson_interval(10, 10);
  CHECK(d == doctest::Approx(1.0));
  CHECK(c > 0.69);
}

TEST_CASE("sweep examples") {
  SweepConfig cfg;
  cfg.n = 5;
  cfg.p_grid = {0.999};
  cfg.samples_per_p = 100;
  cfg.seed = 5;
  const auto r = maturity_sweep(cfg);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].fraction > 0.9);

  cfg.p_grid = {1.0};
  CHECK(maturity_sweep(cfg).records[0].fraction == 1.0);

  cfg.n = 4;
  cfg.p_grid = {0.2, 0.5, 0.8};
  cfg.samples_per_p = 60;
  for (const auto& rec : maturity_sweep(cfg).records) {
    CHECK(rec.mature == 0);
    CHECK(rec.fraction == 0.0);
    CHECK(rec.connected <= rec.samples);
  }
}

TEST_CASE("sweep csv is reproducible") {
  SweepConfig cfg;
  cfg.n = 6;
  cfg.p_grid = {0.3, 0.6, 0.9};
  cfg.samples_per_p = 25;
  cfg.seed = 123;
  cfg.audit_fraction = 0.1;
  const auto a = maturity_sweep(cfg);
  cfg.threads = 3;
  const auto b = maturity_sweep(cfg);
  CHECK(to_csv(a.records) == to_csv(b.records));
  CHECK(to_csv(a.records).rfind(csv_header(), 0) == 0);
  CHECK(a.findings.empty());
  cfg.seed = 124;
  CHECK(to_csv(maturity_sweep(cfg).records) != to_csv(a.records));
}

TEST_CASE("sweep validation and cancellation") {
  SweepConfig cfg;
  cfg.p_grid = {0.5, 0.4};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.p_grid = {};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.p_grid = {0.5};
  cfg.samples_per_p = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.samples_per_p = 3;
  std::atomic<bool> stop{true};
  SweepHooks hooks;
  hooks.cancel = &stop;
  const auto r = maturity_sweep(cfg, hooks);
  CHECK_FALSE(r.complete);
  CHECK(r.records.empty());
}

TEST_CASE("threshold estimate") {
  std::vector<SweepRecord> recs(3);
  recs[0].p = 0.2;
  recs[0].fraction = 0.1;
  recs[0].ci_low = 0.0;
  recs[0].ci_high = 0.3;
  recs[1].p = 0.4;
  recs[1].fraction = 0.3;
  recs[1].ci_low = 0.1;
  recs[1].ci_high = 0.55;
  recs[2].p = 0.6;
  recs[2].fraction = 0.7;
  recs[2].ci_low = 0.45;
  recs[2].ci_high = 0.9;
  const auto t = estimate_threshold(recs);
  REQUIRE(t);
  CHECK(t->p_half == doctest::Approx(0.5));
  CHECK(t->band_low == doctest::Approx(0.4));
  CHECK(t->band_high == doctest::Approx(0.6));
  recs[2].fraction = 0.4;
  CHECK_FALSE(estimate_threshold(recs));
}

TEST_CASE("graph enumeration counts") {
  const std::size_t all[] = {1, 2, 4, 11, 34, 156, 1044};
  const std::size_t connected[] = {1, 1, 2, 6, 21, 112, 853};
  const std::size_t nonplanar[] = {0, 0, 0, 0, 1, 13, 207};
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto gs = enumerate_graphs(n);
    CHECK(gs.size() == all[n - 1]);
    std::size_t c = 0, np = 0;
    for (const auto& g : gs) {
      c += is_connected(g);
      np += is_connected(g) && !is_planar(g);
    }
    CHECK(c == connected[n - 1]);
    CHECK(np == nonplanar[n - 1]);
  }
}

TEST_CASE("scan on fixed corpora") {
  CHECK(conjecture_scan({generate("complete", {5}), generate("bipartite", {3, 3}), generate("complete", {6})})
            .findings.empty());
  const auto planar = conjecture_scan({generate("fig6")});
  CHECK(planar.exhaustive_tested == 0);
  CHECK(planar.findings.empty());

  Graph dw(8);  // two K5 sharing vertices 0 and 1
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) dw.add_edge(i, j);
  const std::size_t second[5] = {0, 1, 5, 6, 7};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (i != 0 || j != 1) dw.add_edge(second[i], second[j]);
  CHECK(conjecture_scan({dw}).findings.empty());

  Graph pendant = generate("complete", {5});
  pendant.add_edge(0, pendant.add_vertex("t"));
  const auto p = conjecture_scan({pendant});
  REQUIRE(p.findings.size() == 1);
  CHECK(p.findings[0].kind == "conjecture1-counterexample");
  const auto& why = p.findings[0].explained_by;
  CHECK(std::find(why.begin(), why.end(), "univalent vertex") != why.end());
  CHECK(reproduces(p.findings[0]));
}

TEST_CASE("findings directory") {
  Graph pendant = generate("complete", {5});
  pendant.add_edge(0, pendant.add_vertex("t"));
  const auto r = conjecture_scan({pendant});
  const auto dir = std::filesystem::temp_directory_path() / "gconf-findings-test";
  std::filesystem::remove_all(dir);
  write_findings(dir.string(), r.findings, {{"seed", 1}});
  std::ifstream in(dir / "manifest.json");
  const auto manifest = nlohmann::json::parse(in);
  CHECK(manifest["count"] == 1);
  const std::string file = manifest["findings"][0]["file"];
  std::ifstream doc_in(dir / file);
  const auto doc = nlohmann::json::parse(doc_in);
  Finding f{doc["kind"], graph_from_json(doc["graph"]), doc["details"], {}};
  CHECK(reproduces(f));
  std::filesystem::remove_all(dir);
}
