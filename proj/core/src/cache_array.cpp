#include "ccsim/cache_array.hpp"

#include <algorithm>
#include <string>

namespace ccsim {

CacheArray::CacheArray(const CacheGeometry& geom) : geom_(geom), rng_(geom.seed) {
  geom_.validate();
  lines_.resize(static_cast<std::size_t>(geom_.num_sets) * geom_.ways);
}

void CacheArray::check_set(std::uint32_t set_id) const {
  if (set_id >= geom_.num_sets) {
    throw SimError(ErrorCode::kConfig,
                   "set id " + std::to_string(set_id) + " out of range");
  }
}

LookupResult CacheArray::lookup(std::uint32_t set_id, std::uint64_t tag,
                                DomainId did, bool requester_is_nid) {
  check_set(set_id);
  std::optional<std::uint32_t> denied_way;
  for (std::uint32_t w = 0; w < geom_.ways; ++w) {
    CacheLine& l = lines_[idx(set_id, w)];
    if (!l.valid || l.tag != tag) continue;
    const bool permitted = l.did == did || (l.shared && requester_is_nid);
    if (permitted) {
      l.repl_meta = ++access_counter_;
      return {LookupResult::Outcome::kHit, w};
    }
    if (!denied_way) denied_way = w;
  }
  if (denied_way) return {LookupResult::Outcome::kPermissionMiss, *denied_way};
  return {LookupResult::Outcome::kMiss, 0};
}

LookupResult CacheArray::lookup_plain(std::uint32_t set_id, std::uint64_t tag) {
  check_set(set_id);
  for (std::uint32_t w = 0; w < geom_.ways; ++w) {
    CacheLine& l = lines_[idx(set_id, w)];
    if (l.valid && l.tag == tag) {
      l.repl_meta = ++access_counter_;
      return {LookupResult::Outcome::kHit, w};
    }
  }
  return {LookupResult::Outcome::kMiss, 0};
}

LookupResult CacheArray::lookup_masked(std::uint32_t set_id, std::uint64_t tag,
                                       std::uint64_t way_mask) {
  check_set(set_id);
  for (std::uint32_t w = 0; w < geom_.ways; ++w) {
    if (!(way_mask & (1ull << w))) continue;
    CacheLine& l = lines_[idx(set_id, w)];
    if (l.valid && l.tag == tag) {
      l.repl_meta = ++access_counter_;
      return {LookupResult::Outcome::kHit, w};
    }
  }
  return {LookupResult::Outcome::kMiss, 0};
}

Slot CacheArray::select_victim(std::span<const Slot> candidates) {
  if (candidates.empty()) {
    throw SimError(ErrorCode::kConfig, "select_victim: empty candidate list");
  }
  std::optional<Slot> invalid_slot;
  for (const Slot& s : candidates) {
    check_set(s.set);
    if (s.way >= geom_.ways) {
      throw SimError(ErrorCode::kConfig, "select_victim: way out of range");
    }
    const CacheLine& l = lines_[idx(s.set, s.way)];
    if (!l.valid && (!invalid_slot || s < *invalid_slot)) invalid_slot = s;
  }
  if (invalid_slot) return *invalid_slot;

  if (geom_.policy == ReplPolicy::kRandom) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng_)];
  }
  // LRU: globally least recent over the pool, ties to the lowest slot.
  Slot best = candidates[0];
  std::uint64_t best_meta = lines_[idx(best.set, best.way)].repl_meta;
  for (const Slot& s : candidates.subspan(1)) {
    const std::uint64_t meta = lines_[idx(s.set, s.way)].repl_meta;
    if (meta < best_meta || (meta == best_meta && s < best)) {
      best = s;
      best_meta = meta;
    }
  }
  return best;
}

void CacheArray::retire(CacheLine& line, FlushStats& stats) {
  stats.lines_invalidated++;
  if (line.dirty) stats.dirty_writebacks++;
  if (hook_) hook_(line);
  line = CacheLine{};
}

EvictionInfo CacheArray::fill(Slot slot, std::uint64_t tag, DomainId did,
                              bool shared, bool write) {
  check_set(slot.set);
  if (slot.way >= geom_.ways) {
    throw SimError(ErrorCode::kConfig, "fill: way out of range");
  }
  CacheLine& l = at(slot);
  EvictionInfo evicted;
  if (l.valid) {
    evicted = {true, l.tag, l.did, l.shared, l.dirty};
    if (hook_) hook_(l);
  }
  l.valid = true;
  l.dirty = write;
  l.tag = tag;
  l.did = did;
  l.shared = shared;
  l.repl_meta = ++access_counter_;
  return evicted;
}

void CacheArray::mark_dirty(Slot slot) {
  check_set(slot.set);
  at(slot).dirty = true;
}

FlushStats CacheArray::invalidate_sets(std::span<const std::uint32_t> set_ids) {
  FlushStats stats;
  for (std::uint32_t s : set_ids) {
    check_set(s);
    for (std::uint32_t w = 0; w < geom_.ways; ++w) {
      CacheLine& l = lines_[idx(s, w)];
      if (l.valid) retire(l, stats);
      else l = CacheLine{};  // reset replacement metadata too
    }
  }
  return stats;
}

FlushStats CacheArray::invalidate_all() {
  FlushStats stats;
  for (CacheLine& l : lines_) {
    if (l.valid) retire(l, stats);
    else l = CacheLine{};
  }
  return stats;
}

FlushStats CacheArray::invalidate_did(DomainId did) {
  FlushStats stats;
  for (CacheLine& l : lines_) {
    if (l.valid && l.did == did) retire(l, stats);
  }
  return stats;
}

std::optional<CacheLine> CacheArray::invalidate_line(std::uint32_t set_id,
                                                     std::uint64_t tag) {
  check_set(set_id);
  for (std::uint32_t w = 0; w < geom_.ways; ++w) {
    CacheLine& l = lines_[idx(set_id, w)];
    if (l.valid && l.tag == tag) {
      CacheLine copy = l;
      FlushStats ignored;
      retire(l, ignored);
      return copy;
    }
  }
  return std::nullopt;
}

std::optional<CacheLine> CacheArray::invalidate_slot(Slot slot) {
  check_set(slot.set);
  if (slot.way >= geom_.ways) {
    throw SimError(ErrorCode::kConfig, "invalidate_slot: way out of range");
  }
  CacheLine& l = at(slot);
  if (!l.valid) return std::nullopt;
  CacheLine copy = l;
  FlushStats ignored;
  retire(l, ignored);
  return copy;
}

std::optional<Slot> CacheArray::find_plain(std::uint32_t set_id,
                                           std::uint64_t tag) const {
  check_set(set_id);
  for (std::uint32_t w = 0; w < geom_.ways; ++w) {
    const CacheLine& l = lines_[idx(set_id, w)];
    if (l.valid && l.tag == tag) return Slot{set_id, w};
  }
  return std::nullopt;
}

const CacheLine& CacheArray::line(std::uint32_t set_id, std::uint32_t way) const {
  check_set(set_id);
  if (way >= geom_.ways) {
    throw SimError(ErrorCode::kConfig, "line: way out of range");
  }
  return lines_[idx(set_id, way)];
}

}  // namespace ccsim
