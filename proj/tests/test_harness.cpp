#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ndncache/config.hpp"
#include "ndncache/rng.hpp"
#include "ndncache/experiment.hpp"

using namespace ndncache;

namespace {

const char* kLineTopo =
    "node 0 router\nnode 1 router\nnode 2 router\n"
    "node 3 consumer\nnode 4 consumer\nnode 5 producer\n"
    "edge 0 1 1e9 0.005\nedge 1 2 1e9 0.005\n"
    "edge 3 0 1e9 0.001\nedge 4 0 1e9 0.001\nedge 5 2 1e9 0.001\n";

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

ExperimentConfig line_config() {
  ExperimentConfig cfg;
  cfg.topology_path = write_temp("ndncache_line.topo", kLineTopo);
  cfg.scheme = Scheme::Uniform;
  cfg.total_router_cache_chunks = 30;
  cfg.file_count = 40;
  cfg.chunks_per_file = 5;
  cfg.q = 0.0;
  cfg.s = 0.7;
  cfg.interest_rate_hz = 40.0;
  cfg.sim_time_s = 10.0;
  cfg.warmup_fraction = 0.4;
  cfg.pit_lifetime_s = 2.0;
  cfg.master_seed = 7;
  cfg.replications = 2;
  cfg.producer_cs_chunks = 20;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("hit_ratio: boundary values") {
  CHECK(hit_ratio(0, 10) == 0.0);
  CHECK(hit_ratio(10, 0) == 1.0);
  CHECK(hit_ratio(3, 9) == 0.25);
  CHECK(hit_ratio(0, 0) == 0.0);
}

TEST_CASE("config: parse, defaults, and unknown keys") {
  std::istringstream good(
      "# comment\n"
      "topology_path = abilene27.topo\n"
      "scheme = degree\n"
      "total_router_cache_chunks = 1100\n"
      "q = 5.0\n"
      "master_seed = 42\n");
  const auto cfg = parse_config(good);
  CHECK(cfg.topology_path == "abilene27.topo");
  CHECK(cfg.scheme == Scheme::Degree);
  CHECK(cfg.total_router_cache_chunks == 1100);
  CHECK(cfg.q == 5.0);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.chunk_size == 10240);       // untouched default
  CHECK(cfg.interest_rate_hz == 20.0);  // untouched default

  std::istringstream unknown("topology_path = x\nnot_a_key = 3\n");
  CHECK_THROWS_AS(parse_config(unknown), std::runtime_error);
  std::istringstream bad_value("replications = many\n");
  CHECK_THROWS_AS(parse_config(bad_value), std::runtime_error);
  std::istringstream bad_scheme("scheme = magic\n");
  CHECK_THROWS_AS(parse_config(bad_scheme), std::runtime_error);
}

TEST_CASE("config: validation rejects out-of-range fields") {
  ExperimentConfig cfg = line_config();
  cfg.warmup_fraction = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::runtime_error);
  cfg = line_config();
  cfg.sim_time_s = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::runtime_error);
  cfg = line_config();
  cfg.topology_path.clear();
  CHECK_THROWS_AS(cfg.validate(), std::runtime_error);
}

TEST_CASE("run_replication: uniform scheme splits the budget evenly") {
  const auto cfg = line_config();
  const auto report = run_replication(cfg, 99);
  REQUIRE(report.plan.capacity_chunks.size() == 3);
  for (int c : report.plan.capacity_chunks) CHECK(c == 10);
  CHECK(report.feature_samples == 0);
  CHECK(report.totals.issued == report.totals.satisfied + report.totals.expired +
                                    report.totals.dropped);
  CHECK(report.totals.issued > 0);
  // bucket grid: 6 s of phase 2 -> one 10 s bucket
  CHECK(report.bucket_start_s == std::vector<double>{4.0});
}

TEST_CASE("run_replication: degree scheme is traffic-independent") {
  auto cfg = line_config();
  cfg.scheme = Scheme::Degree;
  const auto report = run_replication(cfg, 99);
  CHECK(report.feature_samples == 0);
  // line degrees with leaves: r0 has 3 edges, r1 has 2, r2 has 2
  CHECK(report.weights.w(0) == doctest::Approx(3.0 / 7.0));
  CHECK(report.weights.w(1) == doctest::Approx(2.0 / 7.0));
  CHECK(report.weights.w(2) == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("run_replication: zero-rate proposed run falls back to BC-driven weights") {
  auto cfg = line_config();
  cfg.scheme = Scheme::Proposed;
  cfg.interest_rate_hz = 0.0;
  const auto report = run_replication(cfg, 99);
  CHECK(report.feature_samples > 0);
  CHECK(report.totals.issued == 0);
  // full-graph BC over the 6 nodes: r0 = 7 pair-paths, r1 = 6, r2 = 4
  // (both consumers hang off r0), so the weights follow that order
  CHECK(report.weights.w(0) > report.weights.w(1));
  CHECK(report.weights.w(1) > report.weights.w(2));
  CHECK(report.weights.w.sum() == doctest::Approx(1.0));
}

TEST_CASE("run_replication: proposed scheme samples and allocates the full budget") {
  auto cfg = line_config();
  cfg.scheme = Scheme::Proposed;
  const auto report = run_replication(cfg, 123);
  CHECK(report.feature_samples > 0);
  int total = 0;
  for (int c : report.plan.capacity_chunks) {
    CHECK(c >= 1);
    total += c;
  }
  CHECK(total == cfg.total_router_cache_chunks);

  // same seed, same capacities
  const auto repeat = run_replication(cfg, 123);
  CHECK(repeat.plan.capacity_chunks == report.plan.capacity_chunks);
}

TEST_CASE("run_replication: bucket ratios agree with the raw counters behind them") {
  auto cfg = line_config();
  cfg.sim_time_s = 20.0;  // two phase-2 buckets
  cfg.scheme = Scheme::Proposed;
  const auto report = run_replication(cfg, 314159);

  REQUIRE(report.router_hits_per_bucket.size() == report.router_hit_ratio.size());
  std::uint64_t hits = 0, misses = 0;
  for (std::size_t j = 0; j < report.router_hit_ratio.size(); ++j) {
    CHECK(report.router_hit_ratio[j] ==
          hit_ratio(report.router_hits_per_bucket[j], report.router_misses_per_bucket[j]));
    CHECK(report.router_hit_ratio[j] >= 0.0);
    CHECK(report.router_hit_ratio[j] <= 1.0);
    hits += report.router_hits_per_bucket[j];
    misses += report.router_misses_per_bucket[j];
  }
  // the bucket deltas telescope to the phase-2 cumulative counters
  CHECK(report.cumulative_router_hit_ratio == hit_ratio(hits, misses));
}

TEST_CASE("run_replication: golden capacities on the shipped Abilene topology") {
  // recorded from the first verified run of the desk-scale defaults
  // (seed 42, replication 0); guards the whole pipeline end to end
  ExperimentConfig cfg;
  cfg.topology_path = "abilene27.topo";
  cfg.scheme = Scheme::Proposed;
  cfg.total_router_cache_chunks = 1100;
  cfg.file_count = 10000;
  cfg.chunks_per_file = 10;
  cfg.q = 5.0;
  cfg.s = 0.7;
  cfg.interest_rate_hz = 20.0;
  cfg.sim_time_s = 100.0;
  cfg.warmup_fraction = 0.4;
  cfg.pit_lifetime_s = 2.0;
  cfg.producer_cs_chunks = 1000;

  const auto report = run_replication(cfg, replication_seed(42, 0));
  const std::vector<int> golden{179, 36, 279, 12, 27, 129, 170, 34, 53, 90, 91};
  CHECK(report.plan.capacity_chunks == golden);
}

TEST_CASE("aggregate_replications: mean and std") {
  MetricsReport a, b;
  a.bucket_start_s = b.bucket_start_s = {0.0, 10.0};
  a.router_hit_ratio = {0.2, 0.5};
  b.router_hit_ratio = {0.4, 0.5};
  a.producer_hit_ratio = b.producer_hit_ratio = {0.0, 0.0};
  a.mean_rtt_s = b.mean_rtt_s = {0.0, 0.0};
  a.mean_pit_occupancy = b.mean_pit_occupancy = {1.0, 1.0};

  const auto agg = aggregate_replications({a, b});
  CHECK(agg.router_hit_ratio.mean[0] == doctest::Approx(0.3));
  CHECK(agg.router_hit_ratio.stddev[0] == doctest::Approx(std::sqrt(0.02)).epsilon(1e-9));
  CHECK(agg.router_hit_ratio.stddev[1] == doctest::Approx(0.0));

  const auto single = aggregate_replications({a});
  CHECK(single.router_hit_ratio.stddev[0] == 0.0);

  MetricsReport c;
  c.bucket_start_s = {0.0};
  CHECK_THROWS_AS(aggregate_replications({a, c}), std::invalid_argument);
}

TEST_CASE("emit_report: identical runs produce byte-identical CSVs") {
  auto cfg = line_config();
  cfg.scheme = Scheme::Proposed;
  cfg.replications = 2;

  const auto dir1 = std::filesystem::temp_directory_path() / "ndncache_out1";
  const auto dir2 = std::filesystem::temp_directory_path() / "ndncache_out2";
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);

  emit_report(run_experiment(cfg), dir1.string());
  emit_report(run_experiment(cfg), dir2.string());

  const std::vector<std::string> files = {
      "router_hit_ratio.csv", "producer_hit_ratio.csv", "rtt.csv",       "pit_occupancy.csv",
      "per_app_hits.csv",     "allocation.csv",         "totals.csv"};
  for (const auto& f : files) {
    const auto p1 = (dir1 / f).string();
    const auto p2 = (dir2 / f).string();
    REQUIRE(std::filesystem::exists(p1));
    const auto bytes1 = slurp(p1);
    REQUIRE_FALSE(bytes1.empty());
    REQUIRE(bytes1 == slurp(p2));
  }

  // 6 s of phase 2 means a single bucket: header plus one data line
  const auto series = slurp((dir1 / "router_hit_ratio.csv").string());
  CHECK(std::count(series.begin(), series.end(), '\n') == 2);
}

TEST_CASE("emit_report: header-only series for an empty aggregate") {
  ExperimentResult result;
  MetricsReport r;
  r.per_app_hits.push_back({5, 1, 0});
  result.replications.push_back(r);
  result.aggregate = aggregate_replications(result.replications);

  const auto dir = std::filesystem::temp_directory_path() / "ndncache_out_empty";
  std::filesystem::remove_all(dir);
  emit_report(result, dir.string());
  CHECK(slurp((dir / "router_hit_ratio.csv").string()) == "bucket_start_s,mean,std\n");
}
