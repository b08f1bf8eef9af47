#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ndncache/sim_time.hpp"

namespace ndncache {

/// Deterministic discrete-event kernel: a virtual clock plus a pending-event
/// heap. Events fire in (fire_at, sequence) order, so two events scheduled
/// for the same instant execute in scheduling order.
class EventQueue {
 public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::size_t pending() const { return heap_.size(); }

  /// Enqueues an event. Scheduling into the past is a programming error and
  /// throws std::logic_error.
  void schedule(SimTime at, Action action);

  void schedule_in(SimTime delay, Action action) { schedule(now_ + delay, std::move(action)); }

  /// Executes every event with fire_at <= t_end; the clock ends at t_end
  /// even when the queue runs dry earlier.
  void run_until(SimTime t_end);

  /// Executes events until the queue is empty; the clock ends at the last
  /// event's fire time.
  void drain();

 private:
  struct Entry {
    SimTime at;
    std::uint64_t seq;
    Action action;
  };

  // min-heap on (at, seq) via std::push_heap/pop_heap with inverted order
  static bool later(const Entry& a, const Entry& b) {
    if (a.at != b.at) return a.at > b.at;
    return a.seq > b.seq;
  }

  Entry pop_next();

  std::vector<Entry> heap_;
  SimTime now_{};
  std::uint64_t next_seq_ = 0;
};

}  // namespace ndncache
