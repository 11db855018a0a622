#include "ccsim/domain_manager.hpp"

#include <algorithm>
#include <string>

namespace ccsim {

DomainManager::DomainManager(LlcModel& llc, std::uint32_t max_domains,
                             std::uint32_t line_size_bytes,
                             std::uint32_t default_exclusive_sets)
    : llc_(llc),
      max_domains_(max_domains),
      line_size_bytes_(line_size_bytes),
      default_exclusive_sets_(default_exclusive_sets),
      domains_(max_domains) {
  domains_[kNid] = {true, IsolationMode::kMainstream, {}};
}

const DomainManager::Entry& DomainManager::require(DomainId did) const {
  if (did >= max_domains_ || !domains_[did].registered) {
    throw SimError(ErrorCode::kUnknownDid,
                   "domain " + std::to_string(did) + " not registered");
  }
  return domains_[did];
}

bool DomainManager::is_registered(DomainId did) const {
  return did < max_domains_ && domains_[did].registered;
}

IsolationMode DomainManager::mode_of(DomainId did) const {
  return require(did).mode;
}

std::optional<AllocReceipt> DomainManager::register_domain(
    const DomainConfig& cfg) {
  if (cfg.did == kNid || cfg.did >= max_domains_) {
    throw SimError(ErrorCode::kConfig,
                   "domain id " + std::to_string(cfg.did) +
                       " outside [1, " + std::to_string(max_domains_) + ")");
  }
  if (domains_[cfg.did].registered) {
    throw SimError(ErrorCode::kDidInUse,
                   "domain " + std::to_string(cfg.did) + " already in use");
  }
  if (cfg.mode == IsolationMode::kMainstream && cfg.requested_sets) {
    throw SimError(ErrorCode::kConfig,
                   "a mainstream-mode domain cannot hold a chunk");
  }
  std::vector<AddressRange> regions = cfg.shared_regions;
  std::sort(regions.begin(), regions.end(),
            [](const AddressRange& a, const AddressRange& b) {
              return a.begin < b.begin;
            });
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const AddressRange& r = regions[i];
    if (r.end <= r.begin || r.begin % line_size_bytes_ != 0 ||
        r.end % line_size_bytes_ != 0) {
      throw SimError(ErrorCode::kConfig, "shared region not line-aligned");
    }
    if (i > 0 && regions[i - 1].end > r.begin) {
      throw SimError(ErrorCode::kConfig, "shared regions overlap");
    }
  }

  llc_.register_domain(cfg.did, cfg.mode);
  std::optional<AllocReceipt> receipt;
  if (cfg.mode == IsolationMode::kExclusive) {
    try {
      receipt = llc_.allocate(cfg.did,
                              cfg.requested_sets.value_or(default_exclusive_sets_));
    } catch (...) {
      llc_.unregister_domain(cfg.did);
      throw;
    }
  }
  domains_[cfg.did] = {true, cfg.mode, std::move(regions)};
  return receipt;
}

FlushStats DomainManager::teardown_domain(DomainId did, std::uint64_t* cycles) {
  if (did == kNid) {
    throw SimError(ErrorCode::kUnknownDid, "the NI-D cannot be torn down");
  }
  require(did);
  FlushStats flush;
  std::uint64_t total_cycles = 0;
  if (llc_.has_allocation(did)) {
    DeallocResult freed = llc_.deallocate(did);
    flush += freed.flush;
    total_cycles += freed.cycles;
  }
  // Mainstream sets may still hold lines stamped with this domain; sweep
  // them so a reused id cannot hit stale ownership.
  flush += llc_.array().invalidate_did(did);
  llc_.unregister_domain(did);
  domains_[did] = {};
  if (cycles) *cycles = total_cycles;
  return flush;
}

RequestMeta DomainManager::classify(DomainId did, std::uint64_t address) const {
  if (did == kNid) return {kNid, false};
  const Entry& e = require(did);
  const bool shared = std::any_of(
      e.shared_regions.begin(), e.shared_regions.end(),
      [address](const AddressRange& r) { return r.contains(address); });
  return {did, shared};
}

AllocReceipt DomainManager::allocate(DomainId did, std::uint32_t ch_num) {
  const Entry& e = require(did);
  if (e.mode != IsolationMode::kExclusive) {
    throw SimError(ErrorCode::kConfig,
                   "a mainstream-mode domain cannot hold a chunk");
  }
  return llc_.allocate(did, ch_num);
}

DeallocResult DomainManager::deallocate(DomainId did) {
  require(did);
  return llc_.deallocate(did);
}

AllocReceipt DomainManager::resize(DomainId did, std::uint32_t ch_num) {
  require(did);
  return llc_.resize(did, ch_num);
}

}  // namespace ccsim
