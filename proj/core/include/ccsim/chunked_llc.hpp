#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "ccsim/cache_array.hpp"
#include "ccsim/llc_model.hpp"

namespace ccsim {

// 1-bit-per-set allocation vector indexed by global set ID. A set bit means
// the set is exclusively owned by some isolated domain; bits of the NI-D
// principal chunk are never set.
class SetStatusTable {
 public:
  explicit SetStatusTable(std::uint32_t num_sets) : bits_(num_sets, false) {}

  bool allocated(std::uint32_t sid) const { return bits_.at(sid); }
  void set(std::uint32_t sid, bool on) { bits_.at(sid) = on; }
  std::uint32_t popcount() const;
  std::uint32_t size() const { return static_cast<std::uint32_t>(bits_.size()); }

 private:
  std::vector<bool> bits_;
};

// One EC-TABLE row: ALLOC flag, INDEX bit count and the SID-VEC holding the
// global IDs of the sets forming the domain's chunk.
struct ChunkTableRow {
  bool alloc = false;
  std::uint32_t index_bits = 0;
  std::vector<std::uint32_t> sid_vec;
};

struct ControllerConfig {
  CacheGeometry geometry{};
  std::uint32_t max_domains = 16;
  std::uint32_t max_sets_per_domain = 8192;
  // Principal sets hardwired to the NI-D (SIDs 0..P-1); 0 selects the
  // default of num_sets / 2.
  std::uint32_t os_principal_sets = 0;
  std::uint32_t base_hit_cycles = 80;
  std::uint32_t excl_extra_cycles = 1;
  std::uint32_t mainstream_extra_cycles = 2;

  std::uint32_t principal_sets() const {
    return os_principal_sets != 0 ? os_principal_sets : geometry.num_sets / 2;
  }
  void validate() const;
};

// The chunked LLC controller: CST + EC-TABLE management, chunk
// allocation/de-allocation/resizing, exclusive chunk indexing, NI-D
// congruent-set indexing and the access-control flow with cycle accounting.
class ChunkedLlc : public LlcModel {
 public:
  explicit ChunkedLlc(const ControllerConfig& cfg);

  LlcKind kind() const override { return LlcKind::kChunked; }
  CacheArray& array() override { return array_; }
  const ControllerConfig& config() const { return cfg_; }

  void register_domain(DomainId did, IsolationMode mode) override;
  void unregister_domain(DomainId did) override;
  bool is_registered(DomainId did) const;
  IsolationMode mode_of(DomainId did) const;

  // Claims the first ch_num free sets in ascending SID order starting at
  // the first non-principal set; the claimed sets are invalidated and
  // flushed. Latency: one cycle per SID scanned plus one EC-TABLE update.
  AllocReceipt allocate(DomainId did, std::uint32_t ch_num) override;

  // Releases and flushes the domain's chunk. Latency: ch_num + 2 cycles
  // (EC-TABLE read + update, one CST clear per set).
  DeallocResult deallocate(DomainId did) override;

  // Strictly deallocate-then-allocate; if the allocation fails the old
  // chunk has already been released.
  AllocReceipt resize(DomainId did, std::uint32_t ch_num) override;

  bool has_allocation(DomainId did) const override;

  // Exclusive-mode indexing: chunk_index = line_addr mod 2^index_bits,
  // mapped through the SID-VEC. Returns {global sid, chunk_index}.
  std::pair<std::uint32_t, std::uint32_t> map_exclusive(
      DomainId did, std::uint64_t line_addr) const;

  // Mainstream indexing: the principal set plus every congruent set
  // (principal + k*P) the CST reports unallocated, ascending.
  std::vector<std::uint32_t> mainstream_candidates(
      std::uint64_t line_addr) const;

  AccessOutcome access(const AccessRequest& req) override;

  void note_writeback(const AccessRequest& req) override;

  const SetStatusTable& cst() const { return cst_; }
  const ChunkTableRow& row(DomainId did) const;

  // Structured text dump of the controller state (CST occupancy,
  // per-domain SID-VEC and INDEX bits).
  void dump(std::ostream& os) const override;

  // Verifies partition disjointness: CST popcount equals the sum of the
  // SID-VEC sizes, no SID appears in two rows, principal bits stay clear.
  void check_invariants() const;

 private:
  struct DomainEntry {
    bool registered = false;
    IsolationMode mode = IsolationMode::kMainstream;
  };

  void require_registered(DomainId did) const;
  std::vector<Slot> set_slots(std::uint32_t sid) const;

  ControllerConfig cfg_;
  CacheArray array_;
  SetStatusTable cst_;
  std::vector<ChunkTableRow> table_;    // row 0 unused (NI-D is hardwired)
  std::vector<DomainEntry> domains_;
  std::uint32_t principal_;
};

}  // namespace ccsim
