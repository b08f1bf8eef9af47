#pragma once

#include <cstdint>
#include <list>
#include <unordered_map>

#include "ndncache/content_name.hpp"

namespace ndncache {

/// LRU-managed chunk cache with cumulative hit/miss counters. A lookup hit
/// refreshes recency; an insert at capacity evicts the least recently used
/// entry. Capacity 0 caches nothing.
class ContentStore {
 public:
  explicit ContentStore(std::size_t capacity) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return index_.size(); }

  /// True (and counts a hit, refreshing recency) when the chunk is cached.
  /// A miss is not counted here; the caller decides whether the Interest
  /// creates a new PIT entry first.
  bool lookup(const ContentName& name);

  bool contains(const ContentName& name) const { return index_.count(name) > 0; }

  void insert(const ContentName& name);

  void count_miss() { ++misses_; }

  /// Changes capacity; shrinking evicts LRU entries until the contents fit.
  void resize(std::size_t new_capacity);

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

  void reset_counters() {
    hits_ = 0;
    misses_ = 0;
  }

 private:
  void evict_to_capacity();

  std::size_t capacity_;
  std::list<ContentName> recency_;  // front = most recently used
  std::unordered_map<ContentName, std::list<ContentName>::iterator, ContentNameHash> index_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace ndncache
