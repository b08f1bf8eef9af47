#include "ndncache/event_queue.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace ndncache {

void EventQueue::schedule(SimTime at, Action action) {
  if (at < now_) {
    throw std::logic_error("EventQueue::schedule: event scheduled into the past");
  }
  heap_.push_back(Entry{at, next_seq_++, std::move(action)});
  std::push_heap(heap_.begin(), heap_.end(), later);
}

EventQueue::Entry EventQueue::pop_next() {
  std::pop_heap(heap_.begin(), heap_.end(), later);
  Entry e = std::move(heap_.back());
  heap_.pop_back();
  assert(e.at >= now_);
  return e;
}

void EventQueue::run_until(SimTime t_end) {
  while (!heap_.empty() && heap_.front().at <= t_end) {
    Entry e = pop_next();
    now_ = e.at;
    e.action();
  }
  if (t_end > now_) {
    now_ = t_end;
  }
}

void EventQueue::drain() {
  while (!heap_.empty()) {
    Entry e = pop_next();
    now_ = e.at;
    e.action();
  }
}

}  // namespace ndncache
