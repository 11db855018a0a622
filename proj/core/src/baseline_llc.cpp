#include "ccsim/baseline_llc.hpp"

#include <bit>
#include <ostream>
#include <string>

namespace ccsim {

// ---------------------------------------------------------------------------
// SharedLlc

SharedLlc::SharedLlc(const ControllerConfig& cfg)
    : cfg_(cfg), array_(cfg.geometry) {
  cfg_.validate();
}

AccessOutcome SharedLlc::access(const AccessRequest& req) {
  const std::uint64_t line = cfg_.geometry.line_addr(req.address);
  const std::uint32_t sid =
      static_cast<std::uint32_t>(line % cfg_.geometry.num_sets);
  const bool write = req.op == MemOp::kWrite;

  AccessOutcome out;
  out.cycles = cfg_.base_hit_cycles;
  LookupResult r = array_.lookup_plain(sid, line);
  if (r.hit()) {
    out.hit = true;
    out.sid = sid;
    out.way = r.way;
    if (write) array_.mark_dirty({sid, r.way});
    return out;
  }
  std::vector<Slot> pool;
  pool.reserve(cfg_.geometry.ways);
  for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) pool.push_back({sid, w});
  const Slot victim = array_.select_victim(pool);
  out.victim = array_.fill(victim, line, req.did, req.shared, write);
  out.sid = victim.set;
  out.way = victim.way;
  return out;
}

void SharedLlc::register_domain(DomainId, IsolationMode) {}
void SharedLlc::unregister_domain(DomainId) {}

AllocReceipt SharedLlc::allocate(DomainId did, std::uint32_t) {
  AllocReceipt receipt;
  receipt.did = did;
  return receipt;
}

DeallocResult SharedLlc::deallocate(DomainId) { return DeallocResult{}; }

AllocReceipt SharedLlc::resize(DomainId did, std::uint32_t) {
  AllocReceipt receipt;
  receipt.did = did;
  return receipt;
}

void SharedLlc::note_writeback(const AccessRequest& req) {
  const std::uint64_t line = cfg_.geometry.line_addr(req.address);
  const std::uint32_t sid =
      static_cast<std::uint32_t>(line % cfg_.geometry.num_sets);
  if (auto slot = array_.find_plain(sid, line)) array_.mark_dirty(*slot);
}

void SharedLlc::dump(std::ostream& os) const {
  os << "llc shared sets=" << cfg_.geometry.num_sets
     << " ways=" << cfg_.geometry.ways << "\n";
}

// ---------------------------------------------------------------------------
// WayPartLlc

std::uint64_t WayPartitionMap::mask_of(DomainId did,
                                       std::uint32_t total_ways) const {
  const std::uint64_t all =
      total_ways >= 64 ? ~0ull : (1ull << total_ways) - 1;
  if (did == kNid) {
    std::uint64_t taken = 0;
    for (const auto& [d, m] : masks) taken |= m;
    return all & ~taken;
  }
  auto it = masks.find(did);
  return it == masks.end() ? 0 : it->second;
}

void WayPartitionMap::validate(std::uint32_t total_ways) const {
  const std::uint64_t all =
      total_ways >= 64 ? ~0ull : (1ull << total_ways) - 1;
  std::uint64_t taken = 0;
  for (const auto& [did, mask] : masks) {
    if (did == kNid) {
      throw SimError(ErrorCode::kConfig, "NI-D uses the unassigned ways");
    }
    if (mask == 0) {
      throw SimError(ErrorCode::kConfig, "empty way mask");
    }
    if (mask & ~all) {
      throw SimError(ErrorCode::kConfig, "way mask out of range");
    }
    if (mask & taken) {
      throw SimError(ErrorCode::kConfig, "way masks overlap");
    }
    taken |= mask;
  }
  if (taken == all) {
    throw SimError(ErrorCode::kInsufficientWays, "no way left for the NI-D");
  }
}

WayPartLlc::WayPartLlc(const ControllerConfig& cfg)
    : cfg_(cfg), array_(cfg.geometry) {
  cfg_.validate();
  if (cfg_.geometry.ways > 64) {
    throw SimError(ErrorCode::kConfig, "way masks support up to 64 ways");
  }
}

// The NI-D uses the unassigned ways; mainstream-mode domains and shared
// requests take the same pool. Exclusive domains must own a mask.
std::uint64_t WayPartLlc::resolve_mask(const AccessRequest& req) const {
  if (req.did != kNid) {
    auto it = registered_.find(req.did);
    const bool exclusive =
        it != registered_.end() && it->second == IsolationMode::kExclusive;
    if (exclusive && !req.shared) {
      const std::uint64_t mask = map_.mask_of(req.did, cfg_.geometry.ways);
      if (mask == 0) {
        throw SimError(ErrorCode::kUnmappedDomain,
                       "domain " + std::to_string(req.did) + " has no way mask");
      }
      return mask;
    }
    if (it == registered_.end() && !map_.masks.count(req.did)) {
      throw SimError(ErrorCode::kUnmappedDomain,
                     "domain " + std::to_string(req.did) + " has no way mask");
    }
    if (map_.masks.count(req.did) && !req.shared) {
      return map_.masks.at(req.did);
    }
  }
  const std::uint64_t mask = map_.mask_of(kNid, cfg_.geometry.ways);
  if (mask == 0) {
    throw SimError(ErrorCode::kInsufficientWays, "no way left for the NI-D");
  }
  return mask;
}

AccessOutcome WayPartLlc::access(const AccessRequest& req) {
  const std::uint64_t mask = resolve_mask(req);
  const std::uint64_t line = cfg_.geometry.line_addr(req.address);
  const std::uint32_t sid =
      static_cast<std::uint32_t>(line % cfg_.geometry.num_sets);
  const bool write = req.op == MemOp::kWrite;

  AccessOutcome out;
  out.cycles = cfg_.base_hit_cycles;
  LookupResult r = array_.lookup_masked(sid, line, mask);
  if (r.hit()) {
    out.hit = true;
    out.sid = sid;
    out.way = r.way;
    if (write) array_.mark_dirty({sid, r.way});
    return out;
  }
  std::vector<Slot> pool;
  for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) {
    if (mask & (1ull << w)) pool.push_back({sid, w});
  }
  const Slot victim = array_.select_victim(pool);
  out.victim = array_.fill(victim, line, req.did, req.shared, write);
  out.sid = victim.set;
  out.way = victim.way;
  return out;
}

void WayPartLlc::register_domain(DomainId did, IsolationMode mode) {
  if (did == kNid || did >= cfg_.max_domains) {
    throw SimError(ErrorCode::kConfig,
                   "domain id " + std::to_string(did) + " out of range");
  }
  registered_[did] = mode;
}

void WayPartLlc::unregister_domain(DomainId did) {
  if (map_.masks.count(did)) deallocate(did);
  registered_.erase(did);
}

FlushStats WayPartLlc::flush_ways(std::uint64_t mask) {
  FlushStats stats;
  for (std::uint32_t s = 0; s < cfg_.geometry.num_sets; ++s) {
    for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) {
      if (!(mask & (1ull << w))) continue;
      if (auto removed = array_.invalidate_slot({s, w})) {
        stats.lines_invalidated++;
        if (removed->dirty) stats.dirty_writebacks++;
      }
    }
  }
  return stats;
}

AllocReceipt WayPartLlc::allocate(DomainId did, std::uint32_t ch_num) {
  if (did == kNid) {
    throw SimError(ErrorCode::kConfig, "NI-D uses the unassigned ways");
  }
  if (map_.masks.count(did)) {
    throw SimError(ErrorCode::kAlreadyAllocated,
                   "domain " + std::to_string(did) + " already has ways");
  }
  // Capacity-equivalent mapping: ch_num sets of a full-width chunk equal
  // ch_num * ways / num_sets whole ways, at least one.
  const std::uint64_t cap_lines =
      static_cast<std::uint64_t>(ch_num) * cfg_.geometry.ways;
  std::uint32_t want = static_cast<std::uint32_t>(
      (cap_lines + cfg_.geometry.num_sets - 1) / cfg_.geometry.num_sets);
  if (want == 0) want = 1;
  if (want >= cfg_.geometry.ways) {
    throw SimError(ErrorCode::kInsufficientWays,
                   "request needs " + std::to_string(want) + " of " +
                       std::to_string(cfg_.geometry.ways) + " ways");
  }
  const std::uint64_t free = map_.mask_of(kNid, cfg_.geometry.ways);
  std::uint64_t mask = 0;
  std::uint32_t got = 0;
  for (std::uint32_t w = 0; w < cfg_.geometry.ways && got < want; ++w) {
    if (free & (1ull << w)) {
      mask |= 1ull << w;
      ++got;
    }
  }
  if (got < want || free == mask) {  // keep one way for the NI-D
    throw SimError(ErrorCode::kInsufficientWays,
                   "not enough unassigned ways for domain " +
                       std::to_string(did));
  }
  map_.masks[did] = mask;
  map_.validate(cfg_.geometry.ways);

  AllocReceipt receipt;
  receipt.did = did;
  receipt.ch_num = got;  // ways claimed
  for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) {
    if (mask & (1ull << w)) receipt.sids.push_back(w);
  }
  receipt.flush = flush_ways(mask);
  return receipt;
}

DeallocResult WayPartLlc::deallocate(DomainId did) {
  auto it = map_.masks.find(did);
  if (it == map_.masks.end()) {
    throw SimError(ErrorCode::kNotAllocated,
                   "domain " + std::to_string(did) + " has no ways");
  }
  DeallocResult result;
  result.flush = flush_ways(it->second);
  map_.masks.erase(it);
  return result;
}

AllocReceipt WayPartLlc::resize(DomainId did, std::uint32_t ch_num) {
  DeallocResult freed = deallocate(did);
  AllocReceipt receipt = allocate(did, ch_num);
  receipt.flush += freed.flush;
  return receipt;
}

bool WayPartLlc::has_allocation(DomainId did) const {
  return map_.masks.count(did) != 0;
}

void WayPartLlc::note_writeback(const AccessRequest& req) {
  std::uint64_t mask = 0;
  try {
    mask = resolve_mask(req);
  } catch (const SimError&) {
    return;  // owner torn down since the fill
  }
  const std::uint64_t line = cfg_.geometry.line_addr(req.address);
  const std::uint32_t sid =
      static_cast<std::uint32_t>(line % cfg_.geometry.num_sets);
  for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) {
    if (!(mask & (1ull << w))) continue;
    const CacheLine& l = array_.line(sid, w);
    if (l.valid && l.tag == line) {
      array_.mark_dirty({sid, w});
      return;
    }
  }
}

void WayPartLlc::set_partition(const WayPartitionMap& map) {
  map.validate(cfg_.geometry.ways);
  map_ = map;
}

void WayPartLlc::dump(std::ostream& os) const {
  os << "llc way-partitioned sets=" << cfg_.geometry.num_sets
     << " ways=" << cfg_.geometry.ways << "\n";
  for (const auto& [did, mask] : map_.masks) {
    os << "domain " << did << " ways=";
    bool first = true;
    for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) {
      if (mask & (1ull << w)) {
        if (!first) os << ",";
        os << w;
        first = false;
      }
    }
    os << "\n";
  }
}

}  // namespace ccsim
