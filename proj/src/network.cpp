#include "ndncache/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndncache {

Network::Network(EventQueue& queue, RngStream& rng, const Topology& topo,
                 const RoutingTable& routes, const CatalogModel& catalog,
                 const NetworkParams& params, NetworkObserver* observer)
    : queue_(queue),
      rng_(rng),
      topo_(topo),
      routes_(routes),
      catalog_(catalog),
      params_(params),
      observer_(observer),
      router_ids_(topo.routers()),
      consumer_ids_(topo.consumers()),
      producer_ids_(topo.producers()) {
  if (producer_ids_.empty()) {
    throw std::invalid_argument("network: topology has no producers");
  }

  // producers take applications 1..P in ascending node-id order
  int app = 1;
  for (NodeId p : producer_ids_) {
    producers_.emplace(p, ProducerState(topo.attachment(p), app,
                                        static_cast<std::size_t>(params.producer_cs_chunks)));
    producer_of_app_[app] = p;
    ++app;
  }
  for (NodeId c : consumer_ids_) {
    ConsumerState state;
    state.attach = topo.attachment(c);
    consumers_.emplace(c, std::move(state));
  }
  for (NodeId r : router_ids_) {
    RouterState state(static_cast<std::size_t>(params.initial_router_cs_chunks));
    for (NodeId p : producer_ids_) {
      state.fib[p] = routes.next_hop(r, p);
    }
    routers_.emplace(r, std::move(state));
  }
}

int Network::app_of(NodeId producer) const { return producers_.at(producer).app; }

std::size_t Network::pit_size(NodeId router) const { return routers_.at(router).pit.size(); }

const ContentStore& Network::router_cs(NodeId router) const { return routers_.at(router).cs; }

const ContentStore& Network::producer_cs(NodeId producer) const {
  return producers_.at(producer).cs;
}

std::uint64_t Network::router_drops() const {
  std::uint64_t n = 0;
  for (const auto& [_, r] : routers_) n += r.drops;
  return n;
}

std::uint64_t Network::producer_drops() const {
  std::uint64_t n = 0;
  for (const auto& [_, p] : producers_) n += p.drops;
  return n;
}

std::uint64_t Network::unsolicited_data() const {
  std::uint64_t n = 0;
  for (const auto& [_, r] : routers_) n += r.unsolicited;
  for (const auto& [_, c] : consumers_) n += c.unsolicited;
  return n;
}

void Network::clear_fib_route(NodeId router, NodeId producer) {
  routers_.at(router).fib.erase(producer);
}

ContentStore& Network::router_cs_mutable(NodeId router) { return routers_.at(router).cs; }

void Network::set_router_capacities(const std::vector<int>& caps) {
  if (caps.size() != router_ids_.size()) {
    throw std::invalid_argument("network: capacity vector does not match router count");
  }
  for (std::size_t i = 0; i < caps.size(); ++i) {
    routers_.at(router_ids_[i]).cs.resize(static_cast<std::size_t>(caps[i]));
  }
}

void Network::reset_cache_counters() {
  for (auto& [_, r] : routers_) r.cs.reset_counters();
  for (auto& [_, p] : producers_) p.cs.reset_counters();
}

void Network::start_consumers(SimTime stop_issuing_at) {
  stop_issuing_at_ = stop_issuing_at;
  if (params_.interest_rate_hz <= 0.0) return;
  for (NodeId c : consumer_ids_) {
    queue_.schedule(queue_.now(), [this, c] { consumer_tick(c); });
  }
}

void Network::consumer_tick(NodeId consumer) {
  issue_interest(consumer);
  const double gap_s = rng_.exponential(1.0 / params_.interest_rate_hz);
  const SimTime next = queue_.now() + SimTime::from_seconds(gap_s);
  if (next <= stop_issuing_at_) {
    queue_.schedule(next, [this, consumer] { consumer_tick(consumer); });
  }
}

void Network::issue_interest(NodeId consumer) {
  auto& state = consumers_.at(consumer);

  const int app = rng_.uniform_int(1, app_count());
  const int rank = catalog_.sample(rng_);
  int& cursor = state.cursors[{app, rank}];
  const ContentName name{app, rank, cursor};
  cursor = (cursor + 1) % catalog_.chunks_per_file();

  const SimTime now = queue_.now();
  Interest interest{name, now, consumer};
  state.pending[name].push_back(now);
  ++totals_.issued;

  queue_.schedule(now + SimTime::from_seconds(params_.pit_lifetime_s),
                  [this, consumer, name, now] { expire_pending(consumer, name, now); });
  send_interest(consumer, state.attach, interest);
}

void Network::expire_pending(NodeId consumer, const ContentName& name, SimTime issued_at) {
  auto& pending = consumers_.at(consumer).pending;
  auto it = pending.find(name);
  if (it == pending.end()) return;
  auto rec = std::find(it->second.begin(), it->second.end(), issued_at);
  if (rec == it->second.end()) return;
  it->second.erase(rec);
  if (it->second.empty()) pending.erase(it);
  ++totals_.expired;
}

void Network::account_drop(const Interest& interest) {
  auto cit = consumers_.find(interest.origin);
  if (cit == consumers_.end()) return;
  auto& pending = cit->second.pending;
  auto it = pending.find(interest.name);
  if (it == pending.end() || it->second.empty()) return;
  it->second.erase(it->second.begin());  // oldest record
  if (it->second.empty()) pending.erase(it);
  ++totals_.dropped;
}

void Network::send_interest(NodeId from, NodeId to, const Interest& interest) {
  queue_.schedule(queue_.now() + interest_latency(from, to), [this, to, interest, from] {
    switch (topo_.kind(to)) {
      case NodeKind::Router:
        handle_interest(to, interest, from);
        break;
      case NodeKind::Producer:
        producer_respond(to, interest, from);
        break;
      case NodeKind::Consumer:
        break;  // consumers never receive Interests
    }
  });
}

void Network::send_data(NodeId from, NodeId to, const DataChunk& data) {
  queue_.schedule(queue_.now() + data_latency(from, to), [this, to, data, from] {
    switch (topo_.kind(to)) {
      case NodeKind::Router:
        handle_data(to, data, from);
        break;
      case NodeKind::Consumer:
        consumer_receive_data(to, data);
        break;
      case NodeKind::Producer:
        break;  // producers never receive Data
    }
  });
}

void Network::handle_interest(NodeId router, const Interest& interest, NodeId from) {
  auto& state = routers_.at(router);
  const ContentName& name = interest.name;

  // Content Store first
  if (state.cs.lookup(name)) {
    send_data(router, from, DataChunk{name, params_.chunk_size_bytes});
    return;
  }

  // then PIT: aggregate overlapping requests, forwarding only the first
  auto pit_it = state.pit.find(name);
  if (pit_it != state.pit.end()) {
    auto& faces = pit_it->second.faces;
    if (std::find(faces.begin(), faces.end(), from) == faces.end()) {
      faces.push_back(from);
    }
    return;
  }

  // then FIB
  const NodeId producer = producer_of_app_.at(name.app);
  auto fib_it = state.fib.find(producer);
  if (fib_it == state.fib.end()) {
    ++state.drops;
    account_drop(interest);
    return;
  }

  state.cs.count_miss();
  const SimTime now = queue_.now();
  const SimTime expires = now + SimTime::from_seconds(params_.pit_lifetime_s);
  state.pit.emplace(name, PitEntry{{from}, now, expires});
  if (observer_) observer_->pit_created(router, name, now);
  queue_.schedule(expires, [this, router, name, now] { expire_pit(router, name, now); });

  if (observer_) observer_->interest_forwarded(router, name, now);
  send_interest(router, fib_it->second, interest);
}

void Network::handle_data(NodeId router, const DataChunk& data, NodeId from) {
  (void)from;
  auto& state = routers_.at(router);
  auto pit_it = state.pit.find(data.name);
  if (pit_it == state.pit.end()) {
    ++state.unsolicited;  // never forwarded without a PIT match
    return;
  }

  state.cs.insert(data.name);
  std::vector<NodeId> faces = std::move(pit_it->second.faces);
  if (observer_) observer_->data_forwarded(router, data.name, static_cast<int>(faces.size()));
  state.pit.erase(pit_it);
  if (observer_) observer_->pit_removed(router, data.name, queue_.now(), true);
  for (NodeId face : faces) {
    send_data(router, face, data);
  }
}

void Network::expire_pit(NodeId router, const ContentName& name, SimTime created_at) {
  auto& state = routers_.at(router);
  auto it = state.pit.find(name);
  if (it == state.pit.end() || it->second.created_at != created_at) return;
  state.pit.erase(it);
  if (observer_) observer_->pit_removed(router, name, queue_.now(), false);
}

void Network::producer_respond(NodeId producer, const Interest& interest, NodeId from) {
  auto& state = producers_.at(producer);
  if (interest.name.app != state.app) {
    ++state.drops;  // FIB bug signal
    account_drop(interest);
    return;
  }
  if (!state.cs.lookup(interest.name)) {
    // the permanent repository always has the chunk; cache it on the way out
    state.cs.count_miss();
    state.cs.insert(interest.name);
  }
  send_data(producer, from, DataChunk{interest.name, params_.chunk_size_bytes});
}

void Network::consumer_receive_data(NodeId consumer, const DataChunk& data) {
  auto& state = consumers_.at(consumer);
  auto it = state.pending.find(data.name);
  if (it == state.pending.end()) {
    ++state.unsolicited;
    return;
  }
  const SimTime now = queue_.now();
  for (SimTime issued_at : it->second) {
    ++totals_.satisfied;
    rtt_samples_.emplace_back(now, (now - issued_at).seconds());
  }
  state.pending.erase(it);
}

SimTime Network::interest_latency(NodeId a, NodeId b) const {
  // Interests carry no payload: propagation delay only
  return SimTime::from_seconds(topo_.link(a, b).delay_s);
}

SimTime Network::data_latency(NodeId a, NodeId b) const {
  const auto& link = topo_.link(a, b);
  const double tx_s = static_cast<double>(params_.chunk_size_bytes) * 8.0 / link.bandwidth_bps;
  return SimTime::from_seconds(tx_s + link.delay_s);
}

}  // namespace ndncache
