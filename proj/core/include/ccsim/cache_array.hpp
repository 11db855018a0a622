#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ccsim/geometry.hpp"
#include "ccsim/types.hpp"

namespace ccsim {

// One tag-store entry. The tag holds the full line address; data values are
// not modeled, so a line is identified by (tag, did, shared, dirty).
struct CacheLine {
  bool valid = false;
  bool dirty = false;
  std::uint64_t tag = 0;
  DomainId did = 0;
  bool shared = false;
  std::uint64_t repl_meta = 0;  // LRU: global access counter at last touch
};

struct Slot {
  std::uint32_t set = 0;
  std::uint32_t way = 0;
  auto operator<=>(const Slot&) const = default;
};

struct LookupResult {
  enum class Outcome : std::uint8_t { kHit, kMiss, kPermissionMiss };
  Outcome outcome = Outcome::kMiss;
  std::uint32_t way = 0;  // meaningful for kHit and kPermissionMiss

  bool hit() const { return outcome == Outcome::kHit; }
  bool permission_miss() const { return outcome == Outcome::kPermissionMiss; }
};

// Generic set-associative tag array with the domain-ID / shared tag
// extensions. Used for the chunked LLC, both baselines and the private
// L1/L2 levels (which skip the DID checks via lookup_plain).
class CacheArray {
 public:
  // Called for every valid line removed from the array, whether displaced
  // by a fill or invalidated by a flush. Used to keep outer levels
  // inclusion-consistent.
  using LineHook = std::function<void(const CacheLine&)>;

  explicit CacheArray(const CacheGeometry& geom);

  // Tag comparison with the DID/shared access check. A tag match is
  // permitted for the line owner, or for the NI-D when the line is shared.
  // Updates replacement metadata only on a hit; a permission miss reveals
  // nothing beyond the verdict.
  LookupResult lookup(std::uint32_t set_id, std::uint64_t tag, DomainId did,
                      bool requester_is_nid);

  // Tag comparison without access checks (private levels, shared baseline).
  LookupResult lookup_plain(std::uint32_t set_id, std::uint64_t tag);

  // Tag comparison restricted to the ways selected by way_mask.
  LookupResult lookup_masked(std::uint32_t set_id, std::uint64_t tag,
                             std::uint64_t way_mask);

  // Victim choice over an arbitrary candidate pool: any invalid slot wins
  // first (lowest (set, way)), otherwise the policy decides over the union.
  Slot select_victim(std::span<const Slot> candidates);

  EvictionInfo fill(Slot slot, std::uint64_t tag, DomainId did, bool shared,
                    bool write);

  void mark_dirty(Slot slot);

  FlushStats invalidate_sets(std::span<const std::uint32_t> set_ids);
  FlushStats invalidate_all();
  // Sweeps the whole array for lines owned by `did`.
  FlushStats invalidate_did(DomainId did);
  // Removes a single line matching `tag` (any owner); returns its
  // pre-invalidation state if found.
  std::optional<CacheLine> invalidate_line(std::uint32_t set_id,
                                           std::uint64_t tag);
  // Removes whatever occupies one slot.
  std::optional<CacheLine> invalidate_slot(Slot slot);

  std::optional<Slot> find_plain(std::uint32_t set_id, std::uint64_t tag) const;

  const CacheLine& line(std::uint32_t set_id, std::uint32_t way) const;
  const CacheGeometry& geometry() const { return geom_; }

  void set_line_hook(LineHook hook) { hook_ = std::move(hook); }

  template <typename Fn>
  void for_each_valid(Fn&& fn) const {
    for (std::uint32_t s = 0; s < geom_.num_sets; ++s) {
      for (std::uint32_t w = 0; w < geom_.ways; ++w) {
        const CacheLine& l = lines_[idx(s, w)];
        if (l.valid) fn(s, w, l);
      }
    }
  }

 private:
  std::size_t idx(std::uint32_t set, std::uint32_t way) const {
    return static_cast<std::size_t>(set) * geom_.ways + way;
  }
  CacheLine& at(Slot slot) { return lines_[idx(slot.set, slot.way)]; }
  void check_set(std::uint32_t set_id) const;
  void retire(CacheLine& line, FlushStats& stats);

  CacheGeometry geom_;
  std::vector<CacheLine> lines_;
  std::uint64_t access_counter_ = 0;
  std::mt19937_64 rng_;
  LineHook hook_;
};

}  // namespace ccsim
