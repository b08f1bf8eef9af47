#include "ndncache/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stack>
#include <stdexcept>

namespace ndncache {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::runtime_error("topology: line " + std::to_string(line_no) + ": " + what);
}

NodeKind kind_from_string(const std::string& s, int line_no) {
  if (s == "router") return NodeKind::Router;
  if (s == "consumer") return NodeKind::Consumer;
  if (s == "producer") return NodeKind::Producer;
  fail(line_no, "unknown node kind '" + s + "'");
}

}  // namespace

const LinkParams& Topology::link(NodeId u, NodeId v) const {
  auto key = std::minmax(u, v);
  auto it = links_.find({key.first, key.second});
  if (it == links_.end()) {
    throw std::out_of_range("topology: no link between " + std::to_string(u) + " and " +
                            std::to_string(v));
  }
  return it->second;
}

NodeId Topology::attachment(NodeId leaf) const {
  if (kind(leaf) == NodeKind::Router) {
    throw std::logic_error("topology: attachment() called on a router");
  }
  return adj_.at(leaf).front();
}

std::vector<NodeId> Topology::of_kind(NodeKind k) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (kinds_[v] == k) out.push_back(v);
  }
  return out;
}

Topology Topology::parse(const std::string& text) {
  std::map<NodeId, NodeKind> nodes;
  struct RawEdge {
    NodeId a, b;
    LinkParams params;
    int line_no;
  };
  std::vector<RawEdge> edges;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank or comment-only line

    if (tag == "node") {
      long long id = -1;
      std::string kind_str;
      if (!(ls >> id >> kind_str)) fail(line_no, "expected 'node <id> <kind>'");
      if (id < 0) fail(line_no, "node id must be non-negative");
      NodeId nid = static_cast<NodeId>(id);
      if (nodes.count(nid)) fail(line_no, "duplicate node id " + std::to_string(nid));
      nodes[nid] = kind_from_string(kind_str, line_no);
    } else if (tag == "edge") {
      long long a = -1, b = -1;
      double bw = 0.0, delay = 0.0;
      if (!(ls >> a >> b >> bw >> delay)) {
        fail(line_no, "expected 'edge <id> <id> <bandwidth_bps> <delay_s>'");
      }
      if (!nodes.count(static_cast<NodeId>(a)) || !nodes.count(static_cast<NodeId>(b))) {
        fail(line_no, "edge references nonexistent node");
      }
      if (a == b) fail(line_no, "self-loop on node " + std::to_string(a));
      if (bw <= 0.0) fail(line_no, "bandwidth must be positive");
      if (delay < 0.0) fail(line_no, "delay must be non-negative");
      edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), {bw, delay}, line_no});
    } else {
      fail(line_no, "unknown directive '" + tag + "'");
    }
  }

  if (nodes.empty()) {
    throw std::runtime_error("topology: no nodes defined");
  }
  // ids must be dense and zero-based
  NodeId expected = 0;
  for (const auto& [id, _] : nodes) {
    if (id != expected++) {
      throw std::runtime_error("topology: node ids must be dense and zero-based (missing id " +
                               std::to_string(expected - 1) + ")");
    }
  }

  Topology topo;
  topo.kinds_.resize(nodes.size());
  topo.adj_.resize(nodes.size());
  for (const auto& [id, k] : nodes) topo.kinds_[id] = k;

  for (const auto& e : edges) {
    auto key = std::minmax(e.a, e.b);
    if (topo.links_.count({key.first, key.second})) {
      fail(e.line_no, "duplicate edge " + std::to_string(e.a) + "-" + std::to_string(e.b));
    }
    topo.links_[{key.first, key.second}] = e.params;
    topo.adj_[e.a].push_back(e.b);
    topo.adj_[e.b].push_back(e.a);
  }
  for (auto& nbrs : topo.adj_) std::sort(nbrs.begin(), nbrs.end());

  // connectivity
  std::vector<char> seen(nodes.size(), 0);
  std::deque<NodeId> frontier{0};
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    NodeId v = frontier.front();
    frontier.pop_front();
    for (NodeId w : topo.adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push_back(w);
      }
    }
  }
  if (reached != topo.node_count()) {
    throw std::runtime_error("topology: graph is disconnected");
  }

  for (NodeId v = 0; v < topo.node_count(); ++v) {
    if (topo.kinds_[v] == NodeKind::Router) continue;
    if (topo.degree(v) != 1) {
      throw std::runtime_error("topology: consumer/producer node " + std::to_string(v) +
                               " must have exactly one edge");
    }
    if (topo.kinds_[topo.adj_[v].front()] != NodeKind::Router) {
      throw std::runtime_error("topology: node " + std::to_string(v) +
                               " must attach to a router");
    }
  }
  return topo;
}

Topology Topology::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("topology: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

CentralityVector betweenness(const Topology& topo) {
  const int n = topo.node_count();
  std::vector<double> bc(n, 0.0);

  // Brandes: one BFS per source, then dependency accumulation from the
  // farthest vertices back toward the source.
  std::vector<int> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (NodeId w : topo.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : preds[w]) {
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) bc[w] += delta[w];
    }
  }

  // the source loop visits each unordered pair twice
  for (auto& v : bc) v *= 0.5;
  return CentralityVector{std::move(bc)};
}

CentralityVector degree_centrality(const Topology& topo) {
  std::vector<double> deg(topo.node_count());
  for (NodeId v = 0; v < topo.node_count(); ++v) {
    deg[v] = static_cast<double>(topo.degree(v));
  }
  return CentralityVector{std::move(deg)};
}

RoutingTable::RoutingTable(const Topology& topo) {
  const int n = topo.node_count();
  n_ = static_cast<std::size_t>(n);
  next_.assign(n_ * n_, -1);
  dist_.assign(n_ * n_, -1);

  // BFS from each destination; next_hop(v, to) is the smallest-id neighbor
  // of v that lies one hop closer to `to`.
  std::vector<int> dist(n);
  for (NodeId to = 0; to < n; ++to) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[to] = 0;
    std::deque<NodeId> queue{to};
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (NodeId w : topo.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      dist_[index(v, to)] = dist[v];
      if (v == to) continue;
      for (NodeId w : topo.neighbors(v)) {  // ascending, so first match is smallest id
        if (dist[w] == dist[v] - 1) {
          next_[index(v, to)] = w;
          break;
        }
      }
    }
  }
}

}  // namespace ndncache
