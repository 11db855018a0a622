#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccsim {

using DomainId = std::uint16_t;

// The OS and all unprotected code share domain ID 0.
inline constexpr DomainId kNid = 0;

enum class MemOp : std::uint8_t { kRead, kWrite, kIfetch };

// Per-domain cache utilization setting, fixed at registration.
enum class IsolationMode : std::uint8_t { kExclusive, kMainstream };

enum class ErrorCode : std::uint8_t {
  kConfig,
  kAlreadyAllocated,
  kNotPowerOfTwo,
  kExceedsMax,
  kInsufficientFreeSets,
  kInsufficientWays,
  kNotAllocated,
  kUnregisteredDomain,
  kExclusiveWithoutChunk,
  kDidInUse,
  kUnknownDid,
  kUnmappedDomain,
  kScheduling,
  kEmptyStats,
  kUsage,
  kIo,
};

const char* to_string(ErrorCode code);

class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct AccessRequest {
  std::uint32_t core = 0;
  DomainId did = kNid;
  MemOp op = MemOp::kRead;
  std::uint64_t address = 0;  // byte address
  bool shared = false;        // stamped by the domain manager
};

struct FlushStats {
  std::uint64_t lines_invalidated = 0;
  std::uint64_t dirty_writebacks = 0;

  FlushStats& operator+=(const FlushStats& o) {
    lines_invalidated += o.lines_invalidated;
    dirty_writebacks += o.dirty_writebacks;
    return *this;
  }
  friend bool operator==(const FlushStats&, const FlushStats&) = default;
};

// Victim displaced by a fill. Lines are identified by their full line
// address, so `line_addr` is enough to locate stale copies elsewhere.
struct EvictionInfo {
  bool valid = false;  // false: the fill landed in an empty slot
  std::uint64_t line_addr = 0;
  DomainId did = 0;
  bool shared = false;
  bool dirty = false;
};

enum class Level : std::uint8_t { kL1, kL2, kLlc, kMemory };

const char* to_string(Level level);

struct AccessOutcome {
  bool hit = false;              // LLC tag+permission hit
  bool permission_miss = false;  // tag matched, DID/shared check failed
  bool llc_probed = true;
  std::uint32_t sid = 0;  // LLC set serving or filled
  std::uint32_t way = 0;
  EvictionInfo victim;        // LLC victim, if any
  std::uint64_t cycles = 0;   // exact integer latency
  Level served_by = Level::kLlc;
};

}  // namespace ccsim
