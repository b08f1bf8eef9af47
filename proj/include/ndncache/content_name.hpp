#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>

#include "ndncache/sim_time.hpp"
#include "ndncache/topology.hpp"

namespace ndncache {

/// Identifies one chunk: application, file rank within that application's
/// catalog (1-based), and chunk sequence number within the file (0-based).
struct ContentName {
  int app = 0;
  int file_rank = 0;
  int chunk_seq = 0;

  auto operator<=>(const ContentName&) const = default;
};

struct ContentNameHash {
  std::size_t operator()(const ContentName& n) const {
    std::uint64_t packed = (static_cast<std::uint64_t>(n.app) << 56) ^
                           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.file_rank)) << 24) ^
                           static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.chunk_seq));
    packed = (packed ^ (packed >> 30)) * 0xBF58476D1CE4E5B9ULL;
    packed = (packed ^ (packed >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(packed ^ (packed >> 31));
  }
};

struct Interest {
  ContentName name;
  SimTime issued_at;
  NodeId origin = -1;
};

struct DataChunk {
  ContentName name;
  int size_bytes = 0;
};

}  // namespace ndncache
