#pragma once

#include <bit>
#include <cstdint>

#include "ccsim/types.hpp"

namespace ccsim {

enum class ReplPolicy : std::uint8_t { kLru, kRandom };

struct CacheGeometry {
  std::uint32_t line_size_bytes = 64;
  std::uint32_t num_sets = 16384;
  std::uint32_t ways = 16;
  std::uint32_t did_bits = 4;
  ReplPolicy policy = ReplPolicy::kLru;
  std::uint64_t seed = 0;  // stream for the RANDOM policy

  std::uint64_t capacity_bytes() const {
    return static_cast<std::uint64_t>(line_size_bytes) * num_sets * ways;
  }
  std::uint32_t line_offset_bits() const {
    return static_cast<std::uint32_t>(std::bit_width(line_size_bytes) - 1);
  }
  std::uint32_t index_bits() const {
    return static_cast<std::uint32_t>(std::bit_width(num_sets) - 1);
  }
  std::uint64_t line_addr(std::uint64_t byte_addr) const {
    return byte_addr >> line_offset_bits();
  }

  // Throws SimError(kConfig) on a malformed geometry.
  void validate() const;
};

}  // namespace ccsim
