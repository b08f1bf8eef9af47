#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "ndncache/config.hpp"
#include "ndncache/experiment.hpp"
#include "ndncache/fusion.hpp"
#include "ndncache/metrics.hpp"

namespace {

using namespace ndncache;

int run_simulate(const std::string& topology, const std::string& scheme,
                 const std::string& config_path, std::uint64_t seed, bool seed_set,
                 int replications, const std::string& out_dir) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (!topology.empty()) cfg.topology_path = topology;
  if (!scheme.empty()) cfg.scheme = scheme_from_string(scheme);
  if (seed_set) cfg.master_seed = seed;
  if (replications > 0) cfg.replications = replications;

  const ExperimentResult result = run_experiment(cfg);
  emit_report(result, out_dir);

  const auto& agg = result.aggregate;
  std::cout << "scheme=" << to_string(cfg.scheme) << " replications=" << cfg.replications
            << " seed=" << cfg.master_seed << '\n'
            << "  mean router hit ratio (phase 2):   "
            << format_double(agg.mean_cumulative_router_hit_ratio) << '\n'
            << "  mean producer hit ratio (phase 2): "
            << format_double(agg.mean_cumulative_producer_hit_ratio) << '\n'
            << "  mean PIT occupancy (phase 2):      " << format_double(agg.mean_pit_occupancy)
            << '\n'
            << "reports written to " << out_dir << '\n';
  return 0;
}

int run_features(const std::string& topology, const std::string& config_path, std::uint64_t seed,
                 bool seed_set, const std::string& out_path, bool raw) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (!topology.empty()) cfg.topology_path = topology;
  if (seed_set) cfg.master_seed = seed;

  auto records = collect_features_only(cfg);
  if (!raw) {
    // emit the min-max-normalized table (every non-constant column spans [0, 1])
    const FeatureMatrix norm = normalize(make_feature_matrix(records));
    for (std::size_t i = 0; i < records.size(); ++i) {
      records[i].bc = norm.values(static_cast<Eigen::Index>(i), 0);
      records[i].estimated_pi = norm.values(static_cast<Eigen::Index>(i), 1);
      records[i].estimated_hi = norm.values(static_cast<Eigen::Index>(i), 2);
    }
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write '" << out_path << "'\n";
    return 1;
  }
  write_feature_csv(out, records);
  std::cout << "feature table (" << (raw ? "raw" : "min-max normalized") << ") written to "
            << out_path << '\n';
  return 0;
}

int run_allocate(const std::string& features_path, int total, const std::string& mode_str,
                 const std::string& out_path) {
  const auto records = load_feature_csv(features_path);
  const NormalizationMode mode =
      mode_str == "zscore" ? NormalizationMode::ZScore : NormalizationMode::MinMax;
  const WeightVector w = fused_weights(make_feature_matrix(records, mode));
  const AllocationPlan plan = allocate(w, total);

  if (out_path.empty()) {
    write_allocation_csv(std::cout, w, plan);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 1;
    }
    write_allocation_csv(out, w, plan);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NDN cache-size allocation simulator"};
  app.require_subcommand(1);

  std::string topology, scheme, config_path, out_dir = "out", out_path, mode = "minmax";
  std::string features_path;
  std::uint64_t seed = 0;
  int replications = 0, total = 0;
  bool raw = false;

  auto* simulate = app.add_subcommand("simulate", "run the experiment and write CSV reports");
  simulate->add_option("--topology", topology, "topology file");
  simulate->add_option("--scheme", scheme, "uniform|degree|proposed");
  simulate->add_option("--config", config_path, "key = value config file");
  auto* seed_opt = simulate->add_option("--seed", seed, "master seed (u64)");
  simulate->add_option("--replications", replications, "number of replications");
  simulate->add_option("--out", out_dir, "output directory");

  auto* features = app.add_subcommand("features", "dump the per-router feature table CSV");
  features->add_option("--topology", topology, "topology file");
  features->add_option("--config", config_path, "key = value config file");
  auto* fseed_opt = features->add_option("--seed", seed, "master seed (u64)");
  features->add_option("--out", out_path, "output CSV path")->required();
  features->add_flag("--raw", raw, "emit raw values instead of min-max normalized");

  auto* alloc = app.add_subcommand("allocate", "offline fusion: feature CSV -> allocation CSV");
  alloc->add_option("--features", features_path, "feature table CSV")->required();
  alloc->add_option("--total", total, "total cache budget in chunks")->required();
  alloc->add_option("--mode", mode, "normalization: minmax|zscore");
  alloc->add_option("--out", out_path, "output CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return run_simulate(topology, scheme, config_path, seed, seed_opt->count() > 0,
                          replications, out_dir);
    }
    if (features->parsed()) {
      return run_features(topology, config_path, seed, fseed_opt->count() > 0, out_path, raw);
    }
    if (alloc->parsed()) {
      return run_allocate(features_path, total, mode, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
