#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccsim/llc_model.hpp"
#include "ccsim/types.hpp"

namespace ccsim {

// Half-open byte range [begin, end).
struct AddressRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  bool contains(std::uint64_t addr) const { return addr >= begin && addr < end; }
  friend bool operator==(const AddressRange&, const AddressRange&) = default;
};

struct DomainConfig {
  DomainId did = 0;
  IsolationMode mode = IsolationMode::kExclusive;
  // Chunk size for exclusive domains; the configured default applies when
  // absent. Must be absent for mainstream domains.
  std::optional<std::uint32_t> requested_sets;
  std::vector<AddressRange> shared_regions;  // disjoint, line-aligned
};

struct RequestMeta {
  DomainId did = 0;
  bool shared = false;
};

// Emulates the trusted software component: domain registration, isolation
// mode and shared-region configuration, and stamping of (did, shared)
// metadata onto every access.
class DomainManager {
 public:
  DomainManager(LlcModel& llc, std::uint32_t max_domains,
                std::uint32_t line_size_bytes,
                std::uint32_t default_exclusive_sets = 512);

  // Records the domain and, for exclusive mode, claims its chunk.
  std::optional<AllocReceipt> register_domain(const DomainConfig& cfg);

  // Releases the chunk (if any), sweeps mainstream lines still owned by
  // the domain and frees the id for reuse.
  FlushStats teardown_domain(DomainId did, std::uint64_t* cycles = nullptr);

  // Pure metadata stamping. NI-D requests always carry did 0, shared=false.
  RequestMeta classify(DomainId did, std::uint64_t address) const;

  bool is_registered(DomainId did) const;
  IsolationMode mode_of(DomainId did) const;

  // Chunk management passthroughs with registration checks.
  AllocReceipt allocate(DomainId did, std::uint32_t ch_num);
  DeallocResult deallocate(DomainId did);
  AllocReceipt resize(DomainId did, std::uint32_t ch_num);

  std::uint32_t max_domains() const { return max_domains_; }

 private:
  struct Entry {
    bool registered = false;
    IsolationMode mode = IsolationMode::kMainstream;
    std::vector<AddressRange> shared_regions;
  };

  const Entry& require(DomainId did) const;

  LlcModel& llc_;
  std::uint32_t max_domains_;
  std::uint32_t line_size_bytes_;
  std::uint32_t default_exclusive_sets_;
  std::vector<Entry> domains_;
};

}  // namespace ccsim
