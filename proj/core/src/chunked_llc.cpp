#include "ccsim/chunked_llc.hpp"

#include <bit>
#include <cassert>
#include <ostream>
#include <string>

namespace ccsim {

const char* to_string(LlcKind kind) {
  switch (kind) {
    case LlcKind::kChunked: return "chunked";
    case LlcKind::kShared: return "shared";
    case LlcKind::kWayPartitioned: return "way";
  }
  return "?";
}

std::optional<LlcKind> llc_kind_from_string(std::string_view name) {
  if (name == "chunked") return LlcKind::kChunked;
  if (name == "shared") return LlcKind::kShared;
  if (name == "way") return LlcKind::kWayPartitioned;
  return std::nullopt;
}

std::uint32_t SetStatusTable::popcount() const {
  std::uint32_t n = 0;
  for (bool b : bits_) n += b ? 1 : 0;
  return n;
}

void ControllerConfig::validate() const {
  geometry.validate();
  if (max_domains < 2 || max_domains > (1u << geometry.did_bits)) {
    throw SimError(ErrorCode::kConfig,
                   "max_domains must fit in did_bits and be >= 2");
  }
  const std::uint32_t p = principal_sets();
  if (!std::has_single_bit(p) || p > geometry.num_sets) {
    throw SimError(ErrorCode::kConfig,
                   "os_principal_sets must be a power of 2 <= num_sets");
  }
  if (p == geometry.num_sets) {
    throw SimError(ErrorCode::kConfig,
                   "principal chunk leaves no allocatable sets");
  }
  if (max_sets_per_domain == 0 ||
      max_sets_per_domain > geometry.num_sets - p) {
    throw SimError(ErrorCode::kConfig,
                   "max_sets_per_domain exceeds allocatable sets");
  }
}

ChunkedLlc::ChunkedLlc(const ControllerConfig& cfg)
    : cfg_(cfg),
      array_(cfg.geometry),
      cst_(cfg.geometry.num_sets),
      table_(cfg.max_domains),
      domains_(cfg.max_domains),
      principal_(cfg.principal_sets()) {
  cfg_.validate();
  domains_[kNid] = {true, IsolationMode::kMainstream};
}

void ChunkedLlc::register_domain(DomainId did, IsolationMode mode) {
  if (did == kNid || did >= cfg_.max_domains) {
    throw SimError(ErrorCode::kConfig,
                   "domain id " + std::to_string(did) + " out of range");
  }
  if (domains_[did].registered) {
    throw SimError(ErrorCode::kDidInUse,
                   "domain " + std::to_string(did) + " already registered");
  }
  domains_[did] = {true, mode};
}

void ChunkedLlc::unregister_domain(DomainId did) {
  require_registered(did);
  if (did == kNid) {
    throw SimError(ErrorCode::kConfig, "cannot unregister the NI-D");
  }
  if (table_[did].alloc) deallocate(did);
  domains_[did] = {};
}

bool ChunkedLlc::is_registered(DomainId did) const {
  return did < cfg_.max_domains && domains_[did].registered;
}

IsolationMode ChunkedLlc::mode_of(DomainId did) const {
  require_registered(did);
  return domains_[did].mode;
}

void ChunkedLlc::require_registered(DomainId did) const {
  if (!is_registered(did)) {
    throw SimError(ErrorCode::kUnregisteredDomain,
                   "domain " + std::to_string(did) + " not registered");
  }
}

const ChunkTableRow& ChunkedLlc::row(DomainId did) const {
  if (did == kNid || did >= cfg_.max_domains) {
    throw SimError(ErrorCode::kConfig, "no chunk table row for this domain");
  }
  return table_[did];
}

bool ChunkedLlc::has_allocation(DomainId did) const {
  return did != kNid && did < cfg_.max_domains && table_[did].alloc;
}

AllocReceipt ChunkedLlc::allocate(DomainId did, std::uint32_t ch_num) {
  require_registered(did);
  if (did == kNid) {
    throw SimError(ErrorCode::kConfig, "NI-D sets are hardwired");
  }
  ChunkTableRow& row = table_[did];
  if (row.alloc) {
    throw SimError(ErrorCode::kAlreadyAllocated,
                   "domain " + std::to_string(did) + " already owns a chunk");
  }
  if (ch_num == 0 || !std::has_single_bit(ch_num)) {
    throw SimError(ErrorCode::kNotPowerOfTwo,
                   "chunk size " + std::to_string(ch_num));
  }
  if (ch_num > cfg_.max_sets_per_domain) {
    throw SimError(ErrorCode::kExceedsMax,
                   "chunk size " + std::to_string(ch_num) + " exceeds cap " +
                       std::to_string(cfg_.max_sets_per_domain));
  }

  // Sequential scan over the CST, ascending from the first non-principal
  // set, claiming free sets until CH-NUM are found.
  std::vector<std::uint32_t> sids;
  sids.reserve(ch_num);
  std::uint64_t scanned = 0;
  for (std::uint32_t sid = principal_; sid < cfg_.geometry.num_sets; ++sid) {
    ++scanned;
    if (!cst_.allocated(sid)) {
      sids.push_back(sid);
      if (sids.size() == ch_num) break;
    }
  }
  if (sids.size() < ch_num) {
    throw SimError(ErrorCode::kInsufficientFreeSets,
                   "requested " + std::to_string(ch_num) + ", only " +
                       std::to_string(sids.size()) + " sets free");
  }

  for (std::uint32_t sid : sids) cst_.set(sid, true);
  row.alloc = true;
  row.index_bits = static_cast<std::uint32_t>(std::bit_width(ch_num) - 1);
  row.sid_vec = sids;

  AllocReceipt receipt;
  receipt.did = did;
  receipt.ch_num = ch_num;
  receipt.index_bits = row.index_bits;
  receipt.sids = sids;
  receipt.cycles = scanned + 1;  // +1 EC-TABLE update
  // Claimed sets are flushed to drop whatever the previous owners cached.
  receipt.flush = array_.invalidate_sets(sids);
  check_invariants();
  return receipt;
}

DeallocResult ChunkedLlc::deallocate(DomainId did) {
  require_registered(did);
  if (did == kNid || !table_[did].alloc) {
    throw SimError(ErrorCode::kNotAllocated,
                   "domain " + std::to_string(did) + " owns no chunk");
  }
  ChunkTableRow& row = table_[did];
  DeallocResult result;
  result.cycles = static_cast<std::uint64_t>(row.sid_vec.size()) + 2;
  for (std::uint32_t sid : row.sid_vec) cst_.set(sid, false);
  result.flush = array_.invalidate_sets(row.sid_vec);
  row = ChunkTableRow{};
  check_invariants();
  return result;
}

AllocReceipt ChunkedLlc::resize(DomainId did, std::uint32_t ch_num) {
  DeallocResult freed = deallocate(did);
  AllocReceipt receipt = allocate(did, ch_num);
  receipt.cycles += freed.cycles;
  receipt.flush += freed.flush;
  return receipt;
}

std::pair<std::uint32_t, std::uint32_t> ChunkedLlc::map_exclusive(
    DomainId did, std::uint64_t line_addr) const {
  const ChunkTableRow& row = table_.at(did);
  if (did == kNid || !row.alloc) {
    throw SimError(ErrorCode::kNotAllocated,
                   "domain " + std::to_string(did) + " owns no chunk");
  }
  const std::uint32_t chunk_index =
      static_cast<std::uint32_t>(line_addr & ((1ull << row.index_bits) - 1));
  return {row.sid_vec[chunk_index], chunk_index};
}

std::vector<std::uint32_t> ChunkedLlc::mainstream_candidates(
    std::uint64_t line_addr) const {
  const std::uint32_t principal_index =
      static_cast<std::uint32_t>(line_addr % principal_);
  std::vector<std::uint32_t> sids{principal_index};
  for (std::uint32_t sid = principal_index + principal_;
       sid < cfg_.geometry.num_sets; sid += principal_) {
    if (!cst_.allocated(sid)) sids.push_back(sid);
  }
  return sids;
}

std::vector<Slot> ChunkedLlc::set_slots(std::uint32_t sid) const {
  std::vector<Slot> slots;
  slots.reserve(cfg_.geometry.ways);
  for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) slots.push_back({sid, w});
  return slots;
}

AccessOutcome ChunkedLlc::access(const AccessRequest& req) {
  require_registered(req.did);
  const std::uint64_t line = cfg_.geometry.line_addr(req.address);
  const bool is_nid = req.did == kNid;
  const bool mainstream =
      is_nid || domains_[req.did].mode == IsolationMode::kMainstream ||
      req.shared;
  const bool write = req.op == MemOp::kWrite;

  AccessOutcome out;
  if (mainstream) {
    out.cycles = cfg_.base_hit_cycles + cfg_.mainstream_extra_cycles;
    const std::vector<std::uint32_t> cands = mainstream_candidates(line);
    // One logical probe: principal and unallocated congruent sets in
    // parallel. A permission mismatch is indistinguishable from a miss in
    // the returned latency; the verdict is instrumentation only.
    std::optional<Slot> denied;
    for (std::uint32_t sid : cands) {
      LookupResult r = array_.lookup(sid, line, req.did, is_nid);
      if (r.hit()) {
        out.hit = true;
        out.sid = sid;
        out.way = r.way;
        if (write) array_.mark_dirty({sid, r.way});
        return out;
      }
      if (r.permission_miss() && !denied) denied = Slot{sid, r.way};
    }
    out.permission_miss = denied.has_value();
    std::vector<Slot> pool;
    pool.reserve(cands.size() * cfg_.geometry.ways);
    for (std::uint32_t sid : cands) {
      for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) pool.push_back({sid, w});
    }
    const Slot victim = array_.select_victim(pool);
    assert(!cst_.allocated(victim.set));  // mainstream fills stay unallocated
    out.victim = array_.fill(victim, line, req.did, req.shared, write);
    out.sid = victim.set;
    out.way = victim.way;
    return out;
  }

  // Exclusive path: the domain's chunk behaves as a standalone cache.
  if (!table_[req.did].alloc) {
    throw SimError(ErrorCode::kExclusiveWithoutChunk,
                   "domain " + std::to_string(req.did) +
                       " is exclusive but owns no chunk");
  }
  out.cycles = cfg_.base_hit_cycles + cfg_.excl_extra_cycles;
  const auto [sid, chunk_index] = map_exclusive(req.did, line);
  (void)chunk_index;
  LookupResult r = array_.lookup(sid, line, req.did, false);
  if (r.hit()) {
    out.hit = true;
    out.sid = sid;
    out.way = r.way;
    if (write) array_.mark_dirty({sid, r.way});
    return out;
  }
  out.permission_miss = r.permission_miss();
  const std::vector<Slot> pool = set_slots(sid);
  const Slot victim = array_.select_victim(pool);
  out.victim = array_.fill(victim, line, req.did, /*shared=*/false, write);
  out.sid = victim.set;
  out.way = victim.way;
  return out;
}

void ChunkedLlc::note_writeback(const AccessRequest& req) {
  const std::uint64_t line = cfg_.geometry.line_addr(req.address);
  const bool is_nid = req.did == kNid;
  if (!is_registered(req.did)) return;  // domain torn down since the fill
  const bool mainstream =
      is_nid || domains_[req.did].mode == IsolationMode::kMainstream ||
      req.shared;
  if (mainstream) {
    for (std::uint32_t sid : mainstream_candidates(line)) {
      for (std::uint32_t w = 0; w < cfg_.geometry.ways; ++w) {
        const CacheLine& l = array_.line(sid, w);
        if (l.valid && l.tag == line &&
            (l.did == req.did || (l.shared && is_nid))) {
          array_.mark_dirty({sid, w});
          return;
        }
      }
    }
    return;
  }
  if (!table_[req.did].alloc) return;
  const auto [sid, chunk_index] = map_exclusive(req.did, line);
  (void)chunk_index;
  if (auto slot = array_.find_plain(sid, line)) {
    if (array_.line(slot->set, slot->way).did == req.did) array_.mark_dirty(*slot);
  }
}

void ChunkedLlc::dump(std::ostream& os) const {
  os << "llc chunked sets=" << cfg_.geometry.num_sets
     << " ways=" << cfg_.geometry.ways << " principal=" << principal_
     << " allocated=" << cst_.popcount() << "\n";
  for (std::uint32_t did = 1; did < cfg_.max_domains; ++did) {
    const ChunkTableRow& row = table_[did];
    if (!domains_[did].registered && !row.alloc) continue;
    os << "domain " << did << " mode="
       << (domains_[did].registered
               ? (domains_[did].mode == IsolationMode::kExclusive ? "exclusive"
                                                                  : "mainstream")
               : "-")
       << " alloc=" << (row.alloc ? 1 : 0) << " index_bits=" << row.index_bits
       << " sids=";
    // Runs of consecutive SIDs print as first-last.
    for (std::size_t i = 0; i < row.sid_vec.size();) {
      std::size_t j = i;
      while (j + 1 < row.sid_vec.size() &&
             row.sid_vec[j + 1] == row.sid_vec[j] + 1) {
        ++j;
      }
      if (i) os << ",";
      if (j > i) os << row.sid_vec[i] << "-" << row.sid_vec[j];
      else os << row.sid_vec[i];
      i = j + 1;
    }
    os << "\n";
  }
}

void ChunkedLlc::check_invariants() const {
  std::vector<bool> seen(cfg_.geometry.num_sets, false);
  std::uint64_t total = 0;
  for (std::uint32_t did = 1; did < cfg_.max_domains; ++did) {
    const ChunkTableRow& row = table_[did];
    if (!row.alloc) {
      if (!row.sid_vec.empty()) {
        throw SimError(ErrorCode::kConfig, "stale SID-VEC in unallocated row");
      }
      continue;
    }
    if (row.sid_vec.size() != (1ull << row.index_bits)) {
      throw SimError(ErrorCode::kConfig, "SID-VEC size != 2^index_bits");
    }
    total += row.sid_vec.size();
    for (std::uint32_t sid : row.sid_vec) {
      if (sid < principal_) {
        throw SimError(ErrorCode::kConfig, "principal set in a SID-VEC");
      }
      if (seen[sid]) {
        throw SimError(ErrorCode::kConfig, "set owned by two domains");
      }
      seen[sid] = true;
      if (!cst_.allocated(sid)) {
        throw SimError(ErrorCode::kConfig, "SID-VEC entry not marked in CST");
      }
    }
  }
  if (cst_.popcount() != total) {
    throw SimError(ErrorCode::kConfig, "CST popcount != sum of SID-VEC sizes");
  }
  for (std::uint32_t sid = 0; sid < principal_; ++sid) {
    if (cst_.allocated(sid)) {
      throw SimError(ErrorCode::kConfig, "principal set marked allocated");
    }
  }
}

}  // namespace ccsim
