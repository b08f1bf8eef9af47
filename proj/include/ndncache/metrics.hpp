#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ndncache/ewma.hpp"
#include "ndncache/network.hpp"
#include "ndncache/topology.hpp"

namespace ndncache {

/// Raw (pre-normalization) per-router feature row: betweenness plus the
/// EWMA estimates of pending and hit Interests.
struct RouterFeatureRecord {
  NodeId router = -1;
  double bc = 0.0;
  double estimated_pi = 0.0;
  double estimated_hi = 0.0;
};

/// Per-router PI/HI estimator pair fed by the periodic sampling tick.
/// PI samples are PIT-size snapshots; HI samples are CS-hit deltas since the
/// previous tick (windowed counting).
class FeatureSampler {
 public:
  explicit FeatureSampler(const std::vector<NodeId>& routers);

  /// One sampling tick over every router.
  void sample(const Network& net);

  /// Feeds one router's estimators: `pit_entries` as the PI sample and
  /// `cs_hits_total` minus the previous total as the HI sample.
  void sample_router(NodeId router, std::size_t pit_entries, std::uint64_t cs_hits_total);

  /// One record per router in NodeId order, raw values.
  std::vector<RouterFeatureRecord> collect(const CentralityVector& bc) const;

  std::uint64_t samples_taken() const { return samples_taken_; }

 private:
  struct PerRouter {
    EwmaEstimator pi;
    EwmaEstimator hi;
    std::uint64_t last_hits = 0;
  };

  std::vector<NodeId> routers_;  // ascending
  std::map<NodeId, PerRouter> state_;
  std::uint64_t samples_taken_ = 0;
};

/// CSV with header `router_id,bc,ewma_pi,ewma_hi`, floats at 9 significant
/// digits.
void write_feature_csv(std::ostream& out, const std::vector<RouterFeatureRecord>& records);
std::vector<RouterFeatureRecord> read_feature_csv(std::istream& in);
std::vector<RouterFeatureRecord> load_feature_csv(const std::string& path);

/// Formats a double with 9 significant digits (the CSV float convention).
std::string format_double(double value);

}  // namespace ndncache
