#include "ndncache/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ndncache {

Scheme scheme_from_string(const std::string& s) {
  if (s == "uniform") return Scheme::Uniform;
  if (s == "degree") return Scheme::Degree;
  if (s == "proposed") return Scheme::Proposed;
  throw std::runtime_error("config: unknown scheme '" + s + "' (uniform|degree|proposed)");
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Uniform:
      return "uniform";
    case Scheme::Degree:
      return "degree";
    case Scheme::Proposed:
      return "proposed";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (topology_path.empty()) throw std::runtime_error("config: topology_path is required");
  if (chunk_size <= 0) throw std::runtime_error("config: chunk_size must be positive");
  if (total_router_cache_chunks < 1) {
    throw std::runtime_error("config: total_router_cache_chunks must be >= 1");
  }
  if (file_count < 1) throw std::runtime_error("config: file_count must be >= 1");
  if (chunks_per_file < 1) throw std::runtime_error("config: chunks_per_file must be >= 1");
  if (interest_rate_hz < 0.0) throw std::runtime_error("config: interest_rate_hz must be >= 0");
  if (sim_time_s <= 0.0) throw std::runtime_error("config: sim_time_s must be positive");
  if (warmup_fraction <= 0.0 || warmup_fraction >= 1.0) {
    throw std::runtime_error("config: warmup_fraction must lie in (0, 1)");
  }
  if (sample_interval_s <= 0.0) {
    throw std::runtime_error("config: sample_interval_s must be positive");
  }
  if (pit_lifetime_s <= 0.0) throw std::runtime_error("config: pit_lifetime_s must be positive");
  if (replications < 1) throw std::runtime_error("config: replications must be >= 1");
  if (producer_cs_chunks < 0) {
    throw std::runtime_error("config: producer_cs_chunks must be >= 0");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& value, const std::string& key, int line_no) {
  std::istringstream ss(value);
  T out{};
  if (!(ss >> out) || !(ss >> std::ws).eof()) {
    throw std::runtime_error("config: line " + std::to_string(line_no) + ": bad value for '" +
                             key + "'");
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: line " + std::to_string(line_no) +
                               ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw std::runtime_error("config: line " + std::to_string(line_no) + ": empty value");
    }

    if (key == "topology_path") {
      cfg.topology_path = value;
    } else if (key == "scheme") {
      cfg.scheme = scheme_from_string(value);
    } else if (key == "chunk_size") {
      cfg.chunk_size = parse_number<int>(value, key, line_no);
    } else if (key == "total_router_cache_chunks") {
      cfg.total_router_cache_chunks = parse_number<int>(value, key, line_no);
    } else if (key == "file_count") {
      cfg.file_count = parse_number<int>(value, key, line_no);
    } else if (key == "chunks_per_file") {
      cfg.chunks_per_file = parse_number<int>(value, key, line_no);
    } else if (key == "q") {
      cfg.q = parse_number<double>(value, key, line_no);
    } else if (key == "s") {
      cfg.s = parse_number<double>(value, key, line_no);
    } else if (key == "interest_rate_hz") {
      cfg.interest_rate_hz = parse_number<double>(value, key, line_no);
    } else if (key == "sim_time_s") {
      cfg.sim_time_s = parse_number<double>(value, key, line_no);
    } else if (key == "warmup_fraction") {
      cfg.warmup_fraction = parse_number<double>(value, key, line_no);
    } else if (key == "sample_interval_s") {
      cfg.sample_interval_s = parse_number<double>(value, key, line_no);
    } else if (key == "pit_lifetime_s") {
      cfg.pit_lifetime_s = parse_number<double>(value, key, line_no);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_number<std::uint64_t>(value, key, line_no);
    } else if (key == "replications") {
      cfg.replications = parse_number<int>(value, key, line_no);
    } else if (key == "producer_cs_chunks") {
      cfg.producer_cs_chunks = parse_number<int>(value, key, line_no);
    } else {
      throw std::runtime_error("config: line " + std::to_string(line_no) + ": unknown key '" +
                               key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("config: cannot open '" + path + "'");
  }
  return parse_config(f);
}

}  // namespace ndncache
