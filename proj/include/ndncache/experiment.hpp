#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndncache/config.hpp"
#include "ndncache/fusion.hpp"
#include "ndncache/metrics.hpp"
#include "ndncache/network.hpp"

namespace ndncache {

/// hits / (hits + misses); 0 when there were no requests at all.
double hit_ratio(std::uint64_t hits, std::uint64_t misses);

/// Everything measured in one replication. Bucketed series cover the
/// post-reallocation phase only (10 s buckets; in-flight traffic at the end
/// of the run folds into the last bucket). Totals cover the whole run and
/// conserve Interests: issued = satisfied + expired + dropped after drain.
struct MetricsReport {
  std::vector<double> bucket_start_s;
  std::vector<double> router_hit_ratio;    // windowed per bucket
  std::vector<double> producer_hit_ratio;  // windowed per bucket
  std::vector<double> mean_rtt_s;          // 0 for buckets with no deliveries
  std::vector<double> mean_pit_occupancy;  // mean over routers, sampled at 0.01 s

  // raw per-bucket counter deltas behind the ratios (consistency oracle)
  std::vector<std::uint64_t> router_hits_per_bucket;
  std::vector<std::uint64_t> router_misses_per_bucket;

  struct AppHits {
    NodeId producer = -1;
    int app = 0;
    std::uint64_t hits = 0;
  };
  std::vector<AppHits> per_app_hits;  // producer CS hits, phase 2

  Network::Totals totals;
  double cumulative_router_hit_ratio = 0.0;    // phase 2, cumulative
  double cumulative_producer_hit_ratio = 0.0;  // phase 2, cumulative
  double overall_mean_pit_occupancy = 0.0;     // phase 2, all samples

  WeightVector weights;  // phase-2 weights per router
  AllocationPlan plan;   // phase-2 capacities

  std::uint64_t feature_samples = 0;  // metrics-path ticks; 0 for the baselines
};

/// Runs one replication with the given seed: uniform warm-up (with feature
/// sampling for the proposed scheme), reallocation at
/// warmup_fraction * sim_time, then the measured phase.
MetricsReport run_replication(const ExperimentConfig& cfg, std::uint64_t seed);

struct AggregateSeries {
  std::vector<double> mean;
  std::vector<double> stddev;  // sample standard deviation; 0 for n = 1
};

struct AggregateReport {
  std::vector<double> bucket_start_s;
  AggregateSeries router_hit_ratio;
  AggregateSeries producer_hit_ratio;
  AggregateSeries rtt;
  AggregateSeries pit_occupancy;
  std::vector<double> mean_per_app_hits;        // aligned with replications' per_app_hits
  double mean_cumulative_router_hit_ratio = 0.0;
  double mean_cumulative_producer_hit_ratio = 0.0;
  double mean_pit_occupancy = 0.0;
};

/// Per-bucket mean and sample standard deviation across replications.
/// Throws std::invalid_argument when bucket grids differ.
AggregateReport aggregate_replications(const std::vector<MetricsReport>& reports);

struct ExperimentResult {
  std::vector<MetricsReport> replications;
  AggregateReport aggregate;
};

/// Runs cfg.replications replications with seeds derived from
/// cfg.master_seed (splitmix64 chain) and aggregates them.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes router_hit_ratio.csv, producer_hit_ratio.csv, rtt.csv,
/// pit_occupancy.csv, per_app_hits.csv, allocation.csv and totals.csv under
/// out_dir. Byte-stable for identical results.
void emit_report(const ExperimentResult& result, const std::string& out_dir);

/// Runs the warm-up phase only and returns the raw feature records
/// (replication 0 seed).
std::vector<RouterFeatureRecord> collect_features_only(const ExperimentConfig& cfg);

}  // namespace ndncache
