#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ccsim/cache_array.hpp"
#include "ccsim/types.hpp"

namespace ccsim {

enum class LlcKind : std::uint8_t { kChunked, kShared, kWayPartitioned };

const char* to_string(LlcKind kind);
std::optional<LlcKind> llc_kind_from_string(std::string_view name);

struct AllocReceipt {
  DomainId did = 0;
  std::uint32_t ch_num = 0;
  std::uint32_t index_bits = 0;
  std::vector<std::uint32_t> sids;  // way indices for the way-partitioned model
  std::uint64_t cycles = 0;
  FlushStats flush;
};

struct DeallocResult {
  std::uint64_t cycles = 0;
  FlushStats flush;
};

// Common surface of the three LLC models so the hierarchy and the scenario
// engine can drive any of them. Management calls are no-ops where a model
// has no corresponding concept (documented per model).
class LlcModel {
 public:
  virtual ~LlcModel() = default;

  virtual LlcKind kind() const = 0;
  virtual CacheArray& array() = 0;
  const CacheArray& array() const {
    return const_cast<LlcModel*>(this)->array();
  }

  virtual AccessOutcome access(const AccessRequest& req) = 0;

  // Registration communicates the isolation mode to the controller at
  // domain setup; chunk/way capacity is claimed through allocate().
  virtual void register_domain(DomainId did, IsolationMode mode) = 0;
  virtual void unregister_domain(DomainId did) = 0;

  virtual AllocReceipt allocate(DomainId did, std::uint32_t ch_num) = 0;
  virtual DeallocResult deallocate(DomainId did) = 0;
  virtual AllocReceipt resize(DomainId did, std::uint32_t ch_num) = 0;
  virtual bool has_allocation(DomainId did) const = 0;

  // Propagates a dirty private-level victim into the matching LLC line, if
  // still present. No latency, no replacement-state side effects.
  virtual void note_writeback(const AccessRequest& req) = 0;

  virtual void dump(std::ostream& os) const = 0;
};

}  // namespace ccsim
