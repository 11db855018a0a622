#include "ccsim/hierarchy.hpp"

#include <string>

namespace ccsim {

void HierarchyConfig::validate(const CacheGeometry& llc) const {
  l1i.validate();
  l1d.validate();
  l2.validate();
  if (l1i.line_size_bytes != llc.line_size_bytes ||
      l1d.line_size_bytes != llc.line_size_bytes ||
      l2.line_size_bytes != llc.line_size_bytes) {
    throw SimError(ErrorCode::kConfig, "all levels must share one line size");
  }
  if (llc.capacity_bytes() < l2.capacity_bytes() ||
      l2.capacity_bytes() < l1i.capacity_bytes() ||
      l2.capacity_bytes() < l1d.capacity_bytes()) {
    throw SimError(ErrorCode::kConfig,
                   "inclusive hierarchy needs L3 >= L2 >= L1 capacities");
  }
  if (l1_hit_cycles == 0 || l2_hit_cycles == 0 || memory_latency_cycles == 0) {
    throw SimError(ErrorCode::kConfig, "latencies must be positive");
  }
  if (num_cores == 0) {
    throw SimError(ErrorCode::kConfig, "need at least one core");
  }
}

Hierarchy::Hierarchy(const HierarchyConfig& cfg, LlcModel& llc,
                     StatsCollector& stats, SharedPredicate is_shared)
    : cfg_(cfg), llc_(llc), stats_(stats), is_shared_(std::move(is_shared)) {
  cfg_.validate(llc.array().geometry());
  cores_.reserve(cfg_.num_cores);
  for (std::uint32_t c = 0; c < cfg_.num_cores; ++c) {
    cores_.push_back(Core{CacheArray(cfg_.l1i), CacheArray(cfg_.l1d),
                          CacheArray(cfg_.l2), kNid});
  }
}

DomainId Hierarchy::current_did(std::uint32_t core) const {
  if (core >= cores_.size()) {
    throw SimError(ErrorCode::kConfig, "core id out of range");
  }
  return cores_[core].current_did;
}

void Hierarchy::writeback_private_victim(std::uint32_t core,
                                         const CacheLine& victim, Level level) {
  const DomainId did = cores_[core].current_did;
  stats_.record_writeback(did, level);
  const std::uint64_t addr = victim.tag
                             << cores_[core].l2.geometry().line_offset_bits();
  if (level == Level::kL1) {
    // Try the L2 copy first; by inclusion the line is in the LLC otherwise.
    CacheArray& l2 = cores_[core].l2;
    if (auto slot = l2.find_plain(set_of(l2, victim.tag), victim.tag)) {
      l2.mark_dirty(*slot);
      return;
    }
  }
  AccessRequest wb;
  wb.core = core;
  wb.did = did;
  wb.op = MemOp::kWrite;
  wb.address = addr;
  wb.shared = is_shared_ ? is_shared_(did, addr) : false;
  llc_.note_writeback(wb);
}

void Hierarchy::fill_private(std::uint32_t core, CacheArray& cache, Level level,
                             std::uint64_t line, DomainId did, bool write) {
  (void)did;
  const std::uint32_t set = set_of(cache, line);
  std::vector<Slot> pool;
  pool.reserve(cache.geometry().ways);
  for (std::uint32_t w = 0; w < cache.geometry().ways; ++w) pool.push_back({set, w});
  const Slot victim_slot = cache.select_victim(pool);
  const CacheLine& occupant = cache.line(victim_slot.set, victim_slot.way);
  if (occupant.valid && occupant.dirty) {
    writeback_private_victim(core, occupant, level);
  }
  cache.fill(victim_slot, line, kNid, /*shared=*/false, write);
}

AccessOutcome Hierarchy::memory_access(std::uint32_t core,
                                       const AccessRequest& req) {
  if (core >= cores_.size()) {
    throw SimError(ErrorCode::kConfig, "core id out of range");
  }
  Core& c = cores_[core];
  if (req.did != c.current_did) {
    throw SimError(ErrorCode::kScheduling,
                   "domain " + std::to_string(req.did) + " not scheduled on core " +
                       std::to_string(core));
  }
  const OpClass cls = op_class(req.op);
  const bool write = req.op == MemOp::kWrite;
  CacheArray& l1 = req.op == MemOp::kIfetch ? c.l1i : c.l1d;
  const std::uint64_t line = l1.geometry().line_addr(req.address);

  AccessOutcome out;
  out.llc_probed = false;
  out.cycles = cfg_.l1_hit_cycles;

  LookupResult r1 = l1.lookup_plain(set_of(l1, line), line);
  stats_.record_level_access(req.did, Level::kL1, cls, r1.hit(), false);
  if (r1.hit()) {
    if (write) l1.mark_dirty({set_of(l1, line), r1.way});
    out.hit = true;
    out.served_by = Level::kL1;
    stats_.record_request(req.did, out.cycles);
    return out;
  }

  out.cycles += cfg_.l2_hit_cycles;
  LookupResult r2 = c.l2.lookup_plain(set_of(c.l2, line), line);
  stats_.record_level_access(req.did, Level::kL2, cls, r2.hit(), false);
  if (r2.hit()) {
    out.hit = true;
    out.served_by = Level::kL2;
    fill_private(core, l1, Level::kL1, line, req.did, write);
    stats_.record_request(req.did, out.cycles);
    return out;
  }

  AccessOutcome llc = llc_.access(req);
  stats_.record_level_access(req.did, Level::kLlc, cls, llc.hit,
                             llc.permission_miss);
  out.llc_probed = true;
  out.hit = llc.hit;
  out.permission_miss = llc.permission_miss;
  out.sid = llc.sid;
  out.way = llc.way;
  out.victim = llc.victim;
  out.cycles += llc.cycles;
  if (llc.hit) {
    out.served_by = Level::kLlc;
  } else {
    out.served_by = Level::kMemory;
    out.cycles += cfg_.memory_latency_cycles;
  }
  fill_private(core, c.l2, Level::kL2, line, req.did, /*write=*/false);
  fill_private(core, l1, Level::kL1, line, req.did, write);
  stats_.record_request(req.did, out.cycles);
  return out;
}

FlushStats Hierarchy::context_switch(std::uint32_t core, DomainId new_did) {
  if (core >= cores_.size()) {
    throw SimError(ErrorCode::kConfig, "core id out of range");
  }
  Core& c = cores_[core];
  FlushStats total;
  for (auto [cache, level] :
       {std::pair<CacheArray*, Level>{&c.l1i, Level::kL1},
        {&c.l1d, Level::kL1},
        {&c.l2, Level::kL2}}) {
    cache->for_each_valid([&](std::uint32_t, std::uint32_t, const CacheLine& l) {
      if (l.dirty) {
        writeback_private_victim(core, l, level);
      }
    });
    FlushStats flushed = cache->invalidate_all();
    // Dirty lines were already pushed out above; only aggregate counts here.
    total += flushed;
  }
  c.current_did = new_did;
  return total;
}

void Hierarchy::back_invalidate(const CacheLine& llc_line) {
  for (std::uint32_t core = 0; core < cores_.size(); ++core) {
    Core& c = cores_[core];
    const bool backs_this_core =
        llc_line.did == c.current_did ||
        (llc_line.shared && c.current_did == kNid);
    if (!backs_this_core) continue;
    for (auto [cache, level] :
         {std::pair<CacheArray*, Level>{&c.l1i, Level::kL1},
          {&c.l1d, Level::kL1},
          {&c.l2, Level::kL2}}) {
      auto removed =
          cache->invalidate_line(set_of(*cache, llc_line.tag), llc_line.tag);
      if (removed && removed->dirty) {
        stats_.record_writeback(c.current_did, level);
      }
    }
  }
}

bool Hierarchy::check_inclusion() const {
  const CacheArray& llc = llc_.array();
  for (const Core& c : cores_) {
    for (const CacheArray* cache : {&c.l1i, &c.l1d, &c.l2}) {
      bool ok = true;
      cache->for_each_valid([&](std::uint32_t, std::uint32_t,
                                const CacheLine& l) {
        bool present = false;
        llc.for_each_valid([&](std::uint32_t, std::uint32_t,
                               const CacheLine& big) {
          if (big.tag == l.tag &&
              (big.did == c.current_did ||
               (big.shared && c.current_did == kNid))) {
            present = true;
          }
        });
        if (!present) ok = false;
      });
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace ccsim
