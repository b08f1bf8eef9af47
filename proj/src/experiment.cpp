#include "ndncache/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "ndncache/catalog.hpp"
#include "ndncache/event_queue.hpp"
#include "ndncache/rng.hpp"

namespace ndncache {

double hit_ratio(std::uint64_t hits, std::uint64_t misses) {
  const auto total = hits + misses;
  if (total == 0) return 0.0;
  return static_cast<double>(hits) / static_cast<double>(total);
}

namespace {

constexpr double kBucketWidthS = 10.0;

struct CounterSnapshot {
  std::uint64_t router_hits = 0;
  std::uint64_t router_misses = 0;
  std::uint64_t producer_hits = 0;
  std::uint64_t producer_misses = 0;
};

CounterSnapshot take_snapshot(const Network& net) {
  CounterSnapshot s;
  for (NodeId r : net.router_ids()) {
    s.router_hits += net.router_cs(r).hits();
    s.router_misses += net.router_cs(r).misses();
  }
  for (NodeId p : net.producer_ids()) {
    s.producer_hits += net.producer_cs(p).hits();
    s.producer_misses += net.producer_cs(p).misses();
  }
  return s;
}

/// Half-open-on-the-left bucket index for an offset into phase 2, clamping
/// the tail into the last bucket.
std::size_t bucket_index(SimTime offset, std::int64_t bucket_ns, std::size_t n_buckets) {
  if (offset.ns() <= 0) return 0;
  const auto idx = static_cast<std::size_t>((offset.ns() - 1) / bucket_ns);
  return std::min(idx, n_buckets - 1);
}

}  // namespace

MetricsReport run_replication(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();

  const Topology topo = Topology::load(cfg.topology_path);
  const RoutingTable routes(topo);
  const auto producers = topo.producers();
  if (producers.empty()) {
    throw std::runtime_error("experiment: topology has no producers");
  }
  const int n_apps = static_cast<int>(producers.size());
  if (cfg.file_count % n_apps != 0) {
    throw std::runtime_error("experiment: file_count must divide evenly across " +
                             std::to_string(n_apps) + " applications");
  }
  const CatalogModel catalog(cfg.q, cfg.s, cfg.file_count / n_apps, cfg.chunks_per_file);

  EventQueue queue;
  RngStream rng(seed);
  NetworkParams params;
  params.chunk_size_bytes = cfg.chunk_size;
  params.pit_lifetime_s = cfg.pit_lifetime_s;
  params.interest_rate_hz = cfg.interest_rate_hz;
  params.producer_cs_chunks = cfg.producer_cs_chunks;
  Network net(queue, rng, topo, routes, catalog, params);

  const std::vector<NodeId> routers = net.router_ids();
  if (cfg.total_router_cache_chunks < static_cast<int>(routers.size())) {
    throw std::runtime_error("experiment: total_router_cache_chunks below router count");
  }

  // phase 1: uniform allocation
  const AllocationPlan warmup_plan =
      allocate(uniform_weights(routers), cfg.total_router_cache_chunks);
  net.set_router_capacities(warmup_plan.capacity_chunks);

  const SimTime warmup_end = SimTime::from_seconds(cfg.warmup_fraction * cfg.sim_time_s);
  const SimTime sim_end = SimTime::from_seconds(cfg.sim_time_s);
  const SimTime sample_dt = SimTime::from_seconds(cfg.sample_interval_s);

  FeatureSampler sampler(routers);
  if (cfg.scheme == Scheme::Proposed) {
    if (sample_dt >= warmup_end) {
      throw std::runtime_error("experiment: warm-up shorter than one sampling interval");
    }
    for (SimTime t = sample_dt; t < warmup_end; t += sample_dt) {
      queue.schedule(t, [&net, &sampler] { sampler.sample(net); });
    }
  }

  MetricsReport report;

  // reallocation at the warm-up boundary
  queue.schedule(warmup_end, [&] {
    switch (cfg.scheme) {
      case Scheme::Uniform:
        report.weights = uniform_weights(routers);
        break;
      case Scheme::Degree:
        report.weights = degree_weights(routers, degree_centrality(topo));
        break;
      case Scheme::Proposed: {
        const auto records = sampler.collect(betweenness(topo));
        report.weights = fused_weights(make_feature_matrix(records));
        break;
      }
    }
    report.plan = allocate(report.weights, cfg.total_router_cache_chunks);
    net.set_router_capacities(report.plan.capacity_chunks);
    net.reset_cache_counters();
  });

  // phase-2 bucket grid: ceil(phase2 / bucket width)
  const SimTime bucket_dt = SimTime::from_seconds(kBucketWidthS);
  const auto n_buckets = static_cast<std::size_t>(
      std::max<std::int64_t>(1, ((sim_end - warmup_end).ns() + bucket_dt.ns() - 1) /
                                    bucket_dt.ns()));

  std::vector<CounterSnapshot> snapshots(n_buckets + 1);  // [0] is all-zero (post-reset)
  for (std::size_t j = 1; j < n_buckets; ++j) {
    const SimTime at = warmup_end + SimTime::from_ns(bucket_dt.ns() * static_cast<std::int64_t>(j));
    queue.schedule(at, [&snapshots, &net, j] { snapshots[j] = take_snapshot(net); });
  }

  // PIT occupancy reporting (all schemes; separate from the feature path)
  std::vector<double> pit_sum(n_buckets, 0.0);
  std::vector<std::uint64_t> pit_count(n_buckets, 0);
  for (SimTime t = warmup_end + sample_dt; t <= sim_end; t += sample_dt) {
    queue.schedule(t, [&, t] {
      double total = 0.0;
      for (NodeId r : routers) total += static_cast<double>(net.pit_size(r));
      const auto idx = bucket_index(t - warmup_end, bucket_dt.ns(), n_buckets);
      pit_sum[idx] += total / static_cast<double>(routers.size());
      ++pit_count[idx];
    });
  }

  net.start_consumers(sim_end);
  queue.run_until(sim_end);
  queue.drain();  // deliver in-flight Data, fire remaining expiries

  snapshots[n_buckets] = take_snapshot(net);

  const auto& totals = net.totals();
  if (totals.issued != totals.satisfied + totals.expired + totals.dropped) {
    throw std::logic_error("experiment: Interest conservation violated");
  }
  report.totals = totals;

  report.bucket_start_s.resize(n_buckets);
  report.router_hit_ratio.resize(n_buckets);
  report.producer_hit_ratio.resize(n_buckets);
  report.mean_rtt_s.assign(n_buckets, 0.0);
  report.mean_pit_occupancy.assign(n_buckets, 0.0);
  report.router_hits_per_bucket.resize(n_buckets);
  report.router_misses_per_bucket.resize(n_buckets);
  for (std::size_t j = 0; j < n_buckets; ++j) {
    report.bucket_start_s[j] =
        warmup_end.seconds() + kBucketWidthS * static_cast<double>(j);
    const auto& a = snapshots[j];
    const auto& b = snapshots[j + 1];
    report.router_hits_per_bucket[j] = b.router_hits - a.router_hits;
    report.router_misses_per_bucket[j] = b.router_misses - a.router_misses;
    report.router_hit_ratio[j] = hit_ratio(report.router_hits_per_bucket[j],
                                           report.router_misses_per_bucket[j]);
    report.producer_hit_ratio[j] = hit_ratio(b.producer_hits - a.producer_hits,
                                             b.producer_misses - a.producer_misses);
    if (pit_count[j] > 0) {
      report.mean_pit_occupancy[j] = pit_sum[j] / static_cast<double>(pit_count[j]);
    }
  }

  std::vector<double> rtt_sum(n_buckets, 0.0);
  std::vector<std::uint64_t> rtt_count(n_buckets, 0);
  for (const auto& [at, rtt] : net.rtt_samples()) {
    if (at < warmup_end) continue;  // phase-1 delivery
    const auto idx = bucket_index(at - warmup_end, bucket_dt.ns(), n_buckets);
    rtt_sum[idx] += rtt;
    ++rtt_count[idx];
  }
  for (std::size_t j = 0; j < n_buckets; ++j) {
    if (rtt_count[j] > 0) {
      report.mean_rtt_s[j] = rtt_sum[j] / static_cast<double>(rtt_count[j]);
    }
  }

  const auto& final_snap = snapshots[n_buckets];
  report.cumulative_router_hit_ratio =
      hit_ratio(final_snap.router_hits, final_snap.router_misses);
  report.cumulative_producer_hit_ratio =
      hit_ratio(final_snap.producer_hits, final_snap.producer_misses);

  double pit_total = 0.0;
  std::uint64_t pit_samples = 0;
  for (std::size_t j = 0; j < n_buckets; ++j) {
    pit_total += pit_sum[j];
    pit_samples += pit_count[j];
  }
  if (pit_samples > 0) {
    report.overall_mean_pit_occupancy = pit_total / static_cast<double>(pit_samples);
  }

  for (NodeId p : net.producer_ids()) {
    report.per_app_hits.push_back({p, net.app_of(p), net.producer_cs(p).hits()});
  }

  report.feature_samples = sampler.samples_taken();
  if (cfg.scheme != Scheme::Proposed && report.feature_samples != 0) {
    throw std::logic_error("experiment: baseline scheme touched the feature-sampling path");
  }
  return report;
}

namespace {

AggregateSeries aggregate_series(const std::vector<MetricsReport>& reports,
                                 const std::vector<double> MetricsReport::* series) {
  const std::size_t n_buckets = (reports.front().*series).size();
  const auto n = static_cast<double>(reports.size());
  AggregateSeries out;
  out.mean.assign(n_buckets, 0.0);
  out.stddev.assign(n_buckets, 0.0);
  for (std::size_t j = 0; j < n_buckets; ++j) {
    double sum = 0.0;
    for (const auto& r : reports) sum += (r.*series)[j];
    const double mean = sum / n;
    out.mean[j] = mean;
    if (reports.size() > 1) {
      double ss = 0.0;
      for (const auto& r : reports) {
        const double d = (r.*series)[j] - mean;
        ss += d * d;
      }
      out.stddev[j] = std::sqrt(ss / (n - 1.0));
    }
  }
  return out;
}

}  // namespace

AggregateReport aggregate_replications(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) {
    throw std::invalid_argument("aggregate: no reports");
  }
  for (const auto& r : reports) {
    if (r.bucket_start_s != reports.front().bucket_start_s) {
      throw std::invalid_argument("aggregate: mismatched bucket grids");
    }
  }

  AggregateReport agg;
  agg.bucket_start_s = reports.front().bucket_start_s;
  agg.router_hit_ratio = aggregate_series(reports, &MetricsReport::router_hit_ratio);
  agg.producer_hit_ratio = aggregate_series(reports, &MetricsReport::producer_hit_ratio);
  agg.rtt = aggregate_series(reports, &MetricsReport::mean_rtt_s);
  agg.pit_occupancy = aggregate_series(reports, &MetricsReport::mean_pit_occupancy);

  const auto n = static_cast<double>(reports.size());
  agg.mean_per_app_hits.assign(reports.front().per_app_hits.size(), 0.0);
  for (const auto& r : reports) {
    if (r.per_app_hits.size() != agg.mean_per_app_hits.size()) {
      throw std::invalid_argument("aggregate: mismatched producer sets");
    }
    for (std::size_t i = 0; i < r.per_app_hits.size(); ++i) {
      agg.mean_per_app_hits[i] += static_cast<double>(r.per_app_hits[i].hits) / n;
    }
  }
  for (const auto& r : reports) {
    agg.mean_cumulative_router_hit_ratio += r.cumulative_router_hit_ratio / n;
    agg.mean_cumulative_producer_hit_ratio += r.cumulative_producer_hit_ratio / n;
    agg.mean_pit_occupancy += r.overall_mean_pit_occupancy / n;
  }
  return agg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.replications.reserve(static_cast<std::size_t>(cfg.replications));
  for (int k = 0; k < cfg.replications; ++k) {
    result.replications.push_back(run_replication(cfg, replication_seed(cfg.master_seed, k)));
  }
  result.aggregate = aggregate_replications(result.replications);
  return result;
}

namespace {

void write_series_csv(const std::string& path, const std::vector<double>& bucket_start_s,
                      const AggregateSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot write '" + path + "'");
  out << "bucket_start_s,mean,std\n";
  for (std::size_t j = 0; j < bucket_start_s.size(); ++j) {
    out << format_double(bucket_start_s[j]) << ',' << format_double(series.mean[j]) << ','
        << format_double(series.stddev[j]) << '\n';
  }
}

}  // namespace

void emit_report(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto& agg = result.aggregate;
  const auto path = [&out_dir](const char* name) { return (fs::path(out_dir) / name).string(); };

  write_series_csv(path("router_hit_ratio.csv"), agg.bucket_start_s, agg.router_hit_ratio);
  write_series_csv(path("producer_hit_ratio.csv"), agg.bucket_start_s, agg.producer_hit_ratio);
  write_series_csv(path("rtt.csv"), agg.bucket_start_s, agg.rtt);
  write_series_csv(path("pit_occupancy.csv"), agg.bucket_start_s, agg.pit_occupancy);

  {
    std::ofstream out(path("per_app_hits.csv"), std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot write per_app_hits.csv");
    out << "producer,application,hits\n";
    const auto& first = result.replications.front().per_app_hits;
    for (std::size_t i = 0; i < first.size(); ++i) {
      out << first[i].producer << ',' << first[i].app << ','
          << format_double(agg.mean_per_app_hits[i]) << '\n';
    }
  }
  {
    std::ofstream out(path("allocation.csv"), std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot write allocation.csv");
    const auto& rep0 = result.replications.front();
    write_allocation_csv(out, rep0.weights, rep0.plan);
  }
  {
    std::ofstream out(path("totals.csv"), std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot write totals.csv");
    out << "replication,issued,satisfied,expired,dropped,"
           "cumulative_router_hit_ratio,cumulative_producer_hit_ratio\n";
    for (std::size_t k = 0; k < result.replications.size(); ++k) {
      const auto& r = result.replications[k];
      out << k << ',' << r.totals.issued << ',' << r.totals.satisfied << ',' << r.totals.expired
          << ',' << r.totals.dropped << ',' << format_double(r.cumulative_router_hit_ratio) << ','
          << format_double(r.cumulative_producer_hit_ratio) << '\n';
    }
  }
}

std::vector<RouterFeatureRecord> collect_features_only(const ExperimentConfig& cfg) {
  cfg.validate();

  const Topology topo = Topology::load(cfg.topology_path);
  const RoutingTable routes(topo);
  const auto producers = topo.producers();
  const int n_apps = static_cast<int>(producers.size());
  if (n_apps == 0 || cfg.file_count % n_apps != 0) {
    throw std::runtime_error("experiment: file_count must divide evenly across applications");
  }
  const CatalogModel catalog(cfg.q, cfg.s, cfg.file_count / n_apps, cfg.chunks_per_file);

  EventQueue queue;
  RngStream rng(replication_seed(cfg.master_seed, 0));
  NetworkParams params;
  params.chunk_size_bytes = cfg.chunk_size;
  params.pit_lifetime_s = cfg.pit_lifetime_s;
  params.interest_rate_hz = cfg.interest_rate_hz;
  params.producer_cs_chunks = cfg.producer_cs_chunks;
  Network net(queue, rng, topo, routes, catalog, params);

  const std::vector<NodeId> routers = net.router_ids();
  net.set_router_capacities(
      allocate(uniform_weights(routers), cfg.total_router_cache_chunks).capacity_chunks);

  const SimTime warmup_end = SimTime::from_seconds(cfg.warmup_fraction * cfg.sim_time_s);
  const SimTime sample_dt = SimTime::from_seconds(cfg.sample_interval_s);
  if (sample_dt >= warmup_end) {
    throw std::runtime_error("experiment: warm-up shorter than one sampling interval");
  }
  FeatureSampler sampler(routers);
  for (SimTime t = sample_dt; t < warmup_end; t += sample_dt) {
    queue.schedule(t, [&net, &sampler] { sampler.sample(net); });
  }

  net.start_consumers(warmup_end);
  queue.run_until(warmup_end);
  return sampler.collect(betweenness(topo));
}

}  // namespace ndncache
