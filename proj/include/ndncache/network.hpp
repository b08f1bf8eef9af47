#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ndncache/catalog.hpp"
#include "ndncache/content_name.hpp"
#include "ndncache/content_store.hpp"
#include "ndncache/event_queue.hpp"
#include "ndncache/rng.hpp"
#include "ndncache/topology.hpp"

namespace ndncache {

struct PitEntry {
  std::vector<NodeId> faces;  // unique requesting neighbors, arrival order
  SimTime created_at;
  SimTime expires_at;
};

/// Hook points used by the protocol-invariant test suite. All callbacks are
/// no-ops by default.
class NetworkObserver {
 public:
  virtual ~NetworkObserver() = default;
  virtual void interest_forwarded(NodeId /*router*/, const ContentName&, SimTime) {}
  virtual void pit_created(NodeId /*router*/, const ContentName&, SimTime) {}
  virtual void pit_removed(NodeId /*router*/, const ContentName&, SimTime, bool /*satisfied*/) {}
  virtual void data_forwarded(NodeId /*router*/, const ContentName&, int /*n_faces*/) {}
};

struct NetworkParams {
  int chunk_size_bytes = 10240;
  double pit_lifetime_s = 2.0;
  double interest_rate_hz = 20.0;
  int producer_cs_chunks = 1000;
  int initial_router_cs_chunks = 0;
};

/// One simulated NDN instance: routers (CS + PIT + FIB), consumer and
/// producer applications, and the message transport between them. Interests
/// flow consumer -> routers -> producer; Data retraces the PIT trail and is
/// cached by every router it passes. All state belongs to a single engine
/// instance and is mutated only from its event queue.
class Network {
 public:
  struct Totals {
    std::uint64_t issued = 0;
    std::uint64_t satisfied = 0;
    std::uint64_t expired = 0;
    std::uint64_t dropped = 0;
  };

  Network(EventQueue& queue, RngStream& rng, const Topology& topo, const RoutingTable& routes,
          const CatalogModel& catalog, const NetworkParams& params,
          NetworkObserver* observer = nullptr);

  const std::vector<NodeId>& router_ids() const { return router_ids_; }
  const std::vector<NodeId>& consumer_ids() const { return consumer_ids_; }
  const std::vector<NodeId>& producer_ids() const { return producer_ids_; }
  int app_count() const { return static_cast<int>(producer_ids_.size()); }
  int app_of(NodeId producer) const;

  /// Schedules every consumer's first tick at the current clock. Ticks stop
  /// rescheduling once they would fire past `stop_issuing_at`.
  void start_consumers(SimTime stop_issuing_at);

  /// Resizes router Content Stores; `caps` aligns with router_ids().
  /// Shrinking evicts LRU entries, growing keeps contents.
  void set_router_capacities(const std::vector<int>& caps);

  /// Resets router and producer CS hit/miss counters (reallocation boundary).
  void reset_cache_counters();

  // -- protocol handlers (also callable directly by unit tests) --
  void handle_interest(NodeId router, const Interest& interest, NodeId from);
  void handle_data(NodeId router, const DataChunk& data, NodeId from);
  void producer_respond(NodeId producer, const Interest& interest, NodeId from);
  void consumer_tick(NodeId consumer);

  // -- observation --
  std::size_t pit_size(NodeId router) const;
  const ContentStore& router_cs(NodeId router) const;
  const ContentStore& producer_cs(NodeId producer) const;
  const Totals& totals() const { return totals_; }
  std::uint64_t router_drops() const;
  std::uint64_t producer_drops() const;
  std::uint64_t unsolicited_data() const;

  /// (satisfaction time, RTT seconds) per satisfied Interest, in
  /// satisfaction order.
  const std::vector<std::pair<SimTime, double>>& rtt_samples() const { return rtt_samples_; }

  /// Test hook: removing a route exposes the Interest drop path.
  void clear_fib_route(NodeId router, NodeId producer);

  /// Test hook: direct Content Store access for priming cache states.
  ContentStore& router_cs_mutable(NodeId router);

 private:
  struct RouterState {
    ContentStore cs;
    std::unordered_map<ContentName, PitEntry, ContentNameHash> pit;
    std::map<NodeId, NodeId> fib;  // producer node -> next hop
    std::uint64_t drops = 0;
    std::uint64_t unsolicited = 0;

    explicit RouterState(std::size_t cap) : cs(cap) {}
  };

  struct ConsumerState {
    NodeId attach = -1;
    std::unordered_map<ContentName, std::vector<SimTime>, ContentNameHash> pending;
    std::map<std::pair<int, int>, int> cursors;  // (app, file_rank) -> next chunk_seq
    std::uint64_t unsolicited = 0;
  };

  struct ProducerState {
    NodeId attach = -1;
    int app = 0;
    ContentStore cs;

    ProducerState(NodeId a, int app_id, std::size_t cap) : attach(a), app(app_id), cs(cap) {}
    std::uint64_t drops = 0;
  };

  void issue_interest(NodeId consumer);
  void send_interest(NodeId from, NodeId to, const Interest& interest);
  void send_data(NodeId from, NodeId to, const DataChunk& data);
  void consumer_receive_data(NodeId consumer, const DataChunk& data);
  void expire_pit(NodeId router, const ContentName& name, SimTime created_at);
  void expire_pending(NodeId consumer, const ContentName& name, SimTime issued_at);
  void account_drop(const Interest& interest);

  SimTime interest_latency(NodeId a, NodeId b) const;
  SimTime data_latency(NodeId a, NodeId b) const;

  EventQueue& queue_;
  RngStream& rng_;
  const Topology& topo_;
  const RoutingTable& routes_;
  const CatalogModel& catalog_;
  NetworkParams params_;
  NetworkObserver* observer_;

  std::vector<NodeId> router_ids_;
  std::vector<NodeId> consumer_ids_;
  std::vector<NodeId> producer_ids_;
  std::map<int, NodeId> producer_of_app_;

  std::map<NodeId, RouterState> routers_;
  std::map<NodeId, ConsumerState> consumers_;
  std::map<NodeId, ProducerState> producers_;

  Totals totals_;
  std::vector<std::pair<SimTime, double>> rtt_samples_;
  SimTime stop_issuing_at_{};
};

}  // namespace ndncache
