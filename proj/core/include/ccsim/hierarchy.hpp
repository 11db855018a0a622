#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ccsim/cache_array.hpp"
#include "ccsim/llc_model.hpp"
#include "ccsim/stats.hpp"

namespace ccsim {

struct HierarchyConfig {
  // Table-style defaults: split L1 (I: 64 KB/128 sets, D: 32 KB/64 sets,
  // both 8-way), unified L2 512 KB/512 sets/16-way, 64 B lines everywhere.
  CacheGeometry l1i{64, 128, 8, 1};
  CacheGeometry l1d{64, 64, 8, 1};
  CacheGeometry l2{64, 512, 16, 1};
  std::uint32_t l1_hit_cycles = 4;
  std::uint32_t l2_hit_cycles = 14;
  std::uint32_t memory_latency_cycles = 200;
  std::uint32_t num_cores = 2;

  void validate(const CacheGeometry& llc) const;
};

struct CoreState {
  std::uint32_t core_id = 0;
  DomainId current_did = kNid;
};

// Three-level inclusive hierarchy: per-core L1I/L1D and L2 in front of a
// shared LLC model. L1/L2 carry no DID tags; context switches flush the
// core-private levels. LLC line removals back-invalidate matching private
// copies so inclusion holds across management operations too.
class Hierarchy {
 public:
  using SharedPredicate = std::function<bool(DomainId, std::uint64_t)>;

  Hierarchy(const HierarchyConfig& cfg, LlcModel& llc, StatsCollector& stats,
            SharedPredicate is_shared);

  // End-to-end probe L1 -> L2 -> LLC (-> memory); cycles are the sum of
  // the latencies of every probed level plus the memory latency on an LLC
  // miss. Fills propagate back in, maintaining inclusion.
  AccessOutcome memory_access(std::uint32_t core, const AccessRequest& req);

  // Flushes the core-private levels (dirty lines count as writebacks) and
  // installs the new domain. The LLC is untouched. Flushing happens even
  // when new_did equals the current domain.
  FlushStats context_switch(std::uint32_t core, DomainId new_did);

  DomainId current_did(std::uint32_t core) const;
  const HierarchyConfig& config() const { return cfg_; }

  // Removes stale private copies of an LLC line that just left the LLC.
  // Only cores that can be backed by that line are touched, so one
  // domain's LLC evictions never disturb another domain's private state.
  void back_invalidate(const CacheLine& llc_line);

  // Full-scan inclusion check for tests on small geometries: every valid
  // L1/L2 line must be present in the LLC for its core's current domain.
  bool check_inclusion() const;

 private:
  struct Core {
    CacheArray l1i;
    CacheArray l1d;
    CacheArray l2;
    DomainId current_did = kNid;
  };

  void writeback_private_victim(std::uint32_t core, const CacheLine& victim,
                                Level level);
  void fill_private(std::uint32_t core, CacheArray& cache, Level level,
                    std::uint64_t line, DomainId did, bool write);
  std::uint32_t set_of(const CacheArray& cache, std::uint64_t line) const {
    return static_cast<std::uint32_t>(line % cache.geometry().num_sets);
  }

  HierarchyConfig cfg_;
  LlcModel& llc_;
  StatsCollector& stats_;
  SharedPredicate is_shared_;
  std::vector<Core> cores_;
};

}  // namespace ccsim
