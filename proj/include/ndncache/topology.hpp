#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ndncache {

using NodeId = int;

enum class NodeKind { Router, Consumer, Producer };

struct LinkParams {
  double bandwidth_bps = 0.0;
  double delay_s = 0.0;
};

/// Undirected graph of routers with leaf consumers/producers, as read from a
/// topology file. Connected, no self-loops, no parallel edges; every
/// consumer and producer has exactly one edge, attached to a router.
class Topology {
 public:
  int node_count() const { return static_cast<int>(kinds_.size()); }
  int edge_count() const { return static_cast<int>(links_.size()); }

  NodeKind kind(NodeId v) const { return kinds_.at(v); }
  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_.at(v); }
  int degree(NodeId v) const { return static_cast<int>(adj_.at(v).size()); }
  const LinkParams& link(NodeId u, NodeId v) const;

  std::vector<NodeId> routers() const { return of_kind(NodeKind::Router); }
  std::vector<NodeId> consumers() const { return of_kind(NodeKind::Consumer); }
  std::vector<NodeId> producers() const { return of_kind(NodeKind::Producer); }

  /// The unique neighbor of a consumer or producer.
  NodeId attachment(NodeId leaf) const;

  /// Parses the line-oriented topology format: `node <id> <kind>` lines
  /// followed by `edge <id> <id> <bandwidth_bps> <delay_s>` lines, with `#`
  /// starting a comment. Throws std::runtime_error (with the offending line
  /// number where applicable) on syntax or validation failures.
  static Topology parse(const std::string& text);

  static Topology load(const std::string& path);

 private:
  std::vector<NodeId> of_kind(NodeKind k) const;

  std::vector<NodeKind> kinds_;
  std::vector<std::vector<NodeId>> adj_;               // ascending neighbor ids
  std::map<std::pair<NodeId, NodeId>, LinkParams> links_;  // key (min, max)
};

/// Raw (un-normalized) per-node centrality values, indexed by node id.
struct CentralityVector {
  std::vector<double> values;
  double at(NodeId v) const { return values.at(v); }
};

/// Betweenness centrality by Brandes' accumulation on unweighted hop counts
/// over the full graph. Each unordered node pair counts once; path endpoints
/// are excluded.
CentralityVector betweenness(const Topology& topo);

/// Number of incident edges per node; consumer/producer attachments count.
CentralityVector degree_centrality(const Topology& topo);

/// Static min-hop next-hop table for every ordered node pair, with ties
/// broken toward the smallest next-hop id.
class RoutingTable {
 public:
  explicit RoutingTable(const Topology& topo);

  /// Next hop from `from` toward `to`; -1 when from == to.
  NodeId next_hop(NodeId from, NodeId to) const { return next_.at(index(from, to)); }

  int distance(NodeId from, NodeId to) const { return dist_.at(index(from, to)); }

 private:
  std::size_t index(NodeId from, NodeId to) const {
    return static_cast<std::size_t>(from) * n_ + static_cast<std::size_t>(to);
  }

  std::size_t n_ = 0;
  std::vector<NodeId> next_;
  std::vector<int> dist_;
};

}  // namespace ndncache
