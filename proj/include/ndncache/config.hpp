#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ndncache {

enum class Scheme { Uniform, Degree, Proposed };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme scheme);

/// Everything one experiment needs. Defaults are the desk-scale setup for
/// the shipped Abilene topology; any field can be overridden from a config
/// file or the command line.
struct ExperimentConfig {
  std::string topology_path;
  Scheme scheme = Scheme::Proposed;
  int chunk_size = 10240;                  // bytes per chunk
  int total_router_cache_chunks = 1100;    // C_total, split across routers
  int file_count = 10000;                  // catalog size, all applications together
  int chunks_per_file = 10;
  double q = 5.0;                          // Mandelbrot-Zipf plateau factor
  double s = 0.7;                          // Mandelbrot-Zipf shaping factor
  double interest_rate_hz = 20.0;          // per consumer
  double sim_time_s = 100.0;
  double warmup_fraction = 0.4;            // measurement phase share of sim_time
  double sample_interval_s = 0.01;
  double pit_lifetime_s = 2.0;
  std::uint64_t master_seed = 1;
  int replications = 10;
  int producer_cs_chunks = 1000;

  /// Throws std::runtime_error on out-of-range values.
  void validate() const;
};

/// Parses the line-oriented `key = value` format; keys mirror the
/// ExperimentConfig field names. Unknown keys are errors. `#` starts a
/// comment.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

}  // namespace ndncache
