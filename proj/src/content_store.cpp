#include "ndncache/content_store.hpp"

namespace ndncache {

bool ContentStore::lookup(const ContentName& name) {
  auto it = index_.find(name);
  if (it == index_.end()) {
    return false;
  }
  recency_.splice(recency_.begin(), recency_, it->second);
  ++hits_;
  return true;
}

void ContentStore::insert(const ContentName& name) {
  if (capacity_ == 0) return;
  auto it = index_.find(name);
  if (it != index_.end()) {
    recency_.splice(recency_.begin(), recency_, it->second);
    return;
  }
  recency_.push_front(name);
  index_[name] = recency_.begin();
  evict_to_capacity();
}

void ContentStore::resize(std::size_t new_capacity) {
  capacity_ = new_capacity;
  evict_to_capacity();
}

void ContentStore::evict_to_capacity() {
  while (index_.size() > capacity_) {
    index_.erase(recency_.back());
    recency_.pop_back();
  }
}

}  // namespace ndncache
