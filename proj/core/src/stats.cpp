#include "ccsim/stats.hpp"

#include <string>

namespace ccsim {

void StatsCollector::record_level_access(DomainId did, Level level, OpClass cls,
                                         bool hit, bool permission_miss) {
  DomainStats& d = at(did);
  LevelCounters* counters = nullptr;
  switch (level) {
    case Level::kL1: counters = &d.l1; break;
    case Level::kL2: counters = &d.l2; break;
    case Level::kLlc: counters = &d.llc; break;
    case Level::kMemory: return;
  }
  auto bump = [&](LevelCounters& c) {
    c.accesses++;
    if (hit) c.hits++;
    else c.misses++;
    if (permission_miss) c.permission_misses++;
  };
  bump(*counters);
  if (level == Level::kLlc) {
    bump(cls == OpClass::kInstr ? d.llc_instr : d.llc_data);
  }
}

void StatsCollector::record_request(DomainId did, std::uint64_t cycles) {
  DomainStats& d = at(did);
  d.accesses++;
  d.cycles += cycles;
}

void StatsCollector::record_eviction(DomainId evictor, DomainId victim) {
  evictions_[{evictor, victim}]++;
  if (evictor == victim) {
    at(victim).self_evictions++;
  } else {
    at(victim).cross_evictions_suffered++;
    at(evictor).cross_evictions_caused++;
  }
}

void StatsCollector::record_writeback(DomainId did, Level level) {
  DomainStats& d = at(did);
  switch (level) {
    case Level::kL1: d.l1.writebacks++; break;
    case Level::kL2: d.l2.writebacks++; break;
    case Level::kLlc:
    case Level::kMemory: d.llc.writebacks++; break;
  }
}

void StatsCollector::record_mgmt(DomainId did, std::uint64_t cycles) {
  at(did).mgmt_cycles += cycles;
}

double StatsCollector::amat(DomainId did) const {
  const DomainStats& d = domain(did);
  if (d.accesses == 0) {
    throw SimError(ErrorCode::kEmptyStats,
                   "no accesses recorded for domain " + std::to_string(did));
  }
  return static_cast<double>(d.cycles) / static_cast<double>(d.accesses);
}

double StatsCollector::amat_global() const {
  std::uint64_t cycles = 0;
  std::uint64_t accesses = 0;
  for (const auto& [did, d] : per_domain_) {
    cycles += d.cycles;
    accesses += d.accesses;
  }
  if (accesses == 0) {
    throw SimError(ErrorCode::kEmptyStats, "no accesses recorded");
  }
  return static_cast<double>(cycles) / static_cast<double>(accesses);
}

const DomainStats& StatsCollector::domain(DomainId did) const {
  auto it = per_domain_.find(did);
  if (it == per_domain_.end()) {
    throw SimError(ErrorCode::kEmptyStats,
                   "no statistics for domain " + std::to_string(did));
  }
  return it->second;
}

std::vector<DomainId> StatsCollector::domains() const {
  std::vector<DomainId> out;
  out.reserve(per_domain_.size());
  for (const auto& [did, d] : per_domain_) out.push_back(did);
  return out;
}

std::vector<std::vector<std::uint64_t>> StatsCollector::eviction_matrix() const {
  const std::vector<DomainId> dids = domains();
  std::vector<std::vector<std::uint64_t>> m(
      dids.size(), std::vector<std::uint64_t>(dids.size(), 0));
  for (std::size_t i = 0; i < dids.size(); ++i) {
    for (std::size_t j = 0; j < dids.size(); ++j) {
      auto it = evictions_.find({dids[i], dids[j]});
      if (it != evictions_.end()) m[i][j] = it->second;
    }
  }
  return m;
}

}  // namespace ccsim
