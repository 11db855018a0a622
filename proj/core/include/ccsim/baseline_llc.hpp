#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "ccsim/chunked_llc.hpp"
#include "ccsim/llc_model.hpp"

namespace ccsim {

// Unmodified insecure shared LLC: conventional indexing over all sets, no
// DID checks. Lines still carry the requester's DID so eviction matrices
// can be computed. Management calls are accepted and ignored.
class SharedLlc : public LlcModel {
 public:
  explicit SharedLlc(const ControllerConfig& cfg);

  LlcKind kind() const override { return LlcKind::kShared; }
  CacheArray& array() override { return array_; }

  AccessOutcome access(const AccessRequest& req) override;

  void register_domain(DomainId did, IsolationMode mode) override;
  void unregister_domain(DomainId did) override;
  AllocReceipt allocate(DomainId did, std::uint32_t ch_num) override;
  DeallocResult deallocate(DomainId did) override;
  AllocReceipt resize(DomainId did, std::uint32_t ch_num) override;
  bool has_allocation(DomainId) const override { return false; }
  void note_writeback(const AccessRequest& req) override;
  void dump(std::ostream& os) const override;

 private:
  ControllerConfig cfg_;
  CacheArray array_;
};

// Per-domain way masks over [0, ways). Masks are pairwise disjoint; ways
// not assigned to any isolated domain are usable by the NI-D.
struct WayPartitionMap {
  std::map<DomainId, std::uint64_t> masks;

  std::uint64_t mask_of(DomainId did, std::uint32_t total_ways) const;
  void validate(std::uint32_t total_ways) const;
};

// CAT/DAWG-style way-partitioned LLC. Lookup and victim selection are
// restricted to the domain's own ways. allocate() maps a requested set
// count onto the capacity-equivalent number of ways
// (ch_num * ways / num_sets, rounded up, at least 1) and claims the lowest
// free way indices; at least one way must remain for the NI-D.
class WayPartLlc : public LlcModel {
 public:
  explicit WayPartLlc(const ControllerConfig& cfg);

  LlcKind kind() const override { return LlcKind::kWayPartitioned; }
  CacheArray& array() override { return array_; }

  AccessOutcome access(const AccessRequest& req) override;

  void register_domain(DomainId did, IsolationMode mode) override;
  void unregister_domain(DomainId did) override;
  AllocReceipt allocate(DomainId did, std::uint32_t ch_num) override;
  DeallocResult deallocate(DomainId did) override;
  AllocReceipt resize(DomainId did, std::uint32_t ch_num) override;
  bool has_allocation(DomainId did) const override;
  void note_writeback(const AccessRequest& req) override;
  void dump(std::ostream& os) const override;

  // Direct partition configuration; replaces any claimed masks.
  void set_partition(const WayPartitionMap& map);
  const WayPartitionMap& partition() const { return map_; }

 private:
  std::uint64_t resolve_mask(const AccessRequest& req) const;
  FlushStats flush_ways(std::uint64_t mask);

  ControllerConfig cfg_;
  CacheArray array_;
  WayPartitionMap map_;
  std::map<DomainId, IsolationMode> registered_;
};

}  // namespace ccsim
