#include "ndncache/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ndncache {

FeatureSampler::FeatureSampler(const std::vector<NodeId>& routers) : routers_(routers) {
  std::sort(routers_.begin(), routers_.end());
  for (NodeId r : routers_) {
    state_[r] = PerRouter{};
  }
}

void FeatureSampler::sample(const Network& net) {
  for (NodeId r : routers_) {
    sample_router(r, net.pit_size(r), net.router_cs(r).hits());
  }
  ++samples_taken_;
}

void FeatureSampler::sample_router(NodeId router, std::size_t pit_entries,
                                   std::uint64_t cs_hits_total) {
  auto& s = state_.at(router);
  if (cs_hits_total < s.last_hits) {
    throw std::logic_error("metrics: CS hit counter went backwards");
  }
  const auto hit_delta = cs_hits_total - s.last_hits;
  s.last_hits = cs_hits_total;
  s.pi.update(static_cast<double>(pit_entries));
  s.hi.update(static_cast<double>(hit_delta));
}

std::vector<RouterFeatureRecord> FeatureSampler::collect(const CentralityVector& bc) const {
  std::vector<RouterFeatureRecord> records;
  records.reserve(routers_.size());
  for (NodeId r : routers_) {
    const auto& s = state_.at(r);
    records.push_back({r, bc.at(r), s.pi.estimate(), s.hi.estimate()});
  }
  return records;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_feature_csv(std::ostream& out, const std::vector<RouterFeatureRecord>& records) {
  out << "router_id,bc,ewma_pi,ewma_hi\n";
  for (const auto& rec : records) {
    out << rec.router << ',' << format_double(rec.bc) << ',' << format_double(rec.estimated_pi)
        << ',' << format_double(rec.estimated_hi) << '\n';
  }
}

std::vector<RouterFeatureRecord> read_feature_csv(std::istream& in) {
  std::vector<RouterFeatureRecord> records;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("feature csv: empty input");
  }
  if (line != "router_id,bc,ewma_pi,ewma_hi") {
    throw std::runtime_error("feature csv: unexpected header '" + line + "'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    RouterFeatureRecord rec;
    char comma = 0;
    std::istringstream ls(line);
    if (!(ls >> rec.router >> comma >> rec.bc >> comma >> rec.estimated_pi >> comma >>
          rec.estimated_hi)) {
      throw std::runtime_error("feature csv: line " + std::to_string(line_no) + ": parse error");
    }
    records.push_back(rec);
  }
  return records;
}

std::vector<RouterFeatureRecord> load_feature_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("feature csv: cannot open '" + path + "'");
  }
  return read_feature_csv(f);
}

}  // namespace ndncache
