#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ccsim/types.hpp"

namespace ccsim {

enum class OpClass : std::uint8_t { kData, kInstr };

inline OpClass op_class(MemOp op) {
  return op == MemOp::kIfetch ? OpClass::kInstr : OpClass::kData;
}

struct LevelCounters {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t permission_misses = 0;
  std::uint64_t writebacks = 0;

  double miss_rate() const {
    return accesses == 0 ? 0.0 : static_cast<double>(misses) / accesses;
  }
};

struct DomainStats {
  LevelCounters l1, l2, llc;
  LevelCounters llc_instr, llc_data;  // category split at the LLC
  std::uint64_t self_evictions = 0;
  std::uint64_t cross_evictions_suffered = 0;
  std::uint64_t cross_evictions_caused = 0;
  std::uint64_t cycles = 0;    // end-to-end, for AMAT
  std::uint64_t accesses = 0;  // memory accesses issued
  std::uint64_t mgmt_cycles = 0;
};

// Pure aggregation over replay events; emission lives in analysis.
class StatsCollector {
 public:
  void record_level_access(DomainId did, Level level, OpClass cls, bool hit,
                           bool permission_miss);
  void record_request(DomainId did, std::uint64_t cycles);
  void record_eviction(DomainId evictor, DomainId victim);
  void record_writeback(DomainId did, Level level);
  void record_mgmt(DomainId did, std::uint64_t cycles);

  // Average access latency in cycles; exact integer sums divided once.
  double amat(DomainId did) const;
  double amat_global() const;

  const DomainStats& domain(DomainId did) const;
  std::vector<DomainId> domains() const;  // ascending, touched domains only
  // evictions[evictor][victim] over the touched-domain list.
  std::vector<std::vector<std::uint64_t>> eviction_matrix() const;

  bool empty() const { return per_domain_.empty(); }

 private:
  DomainStats& at(DomainId did) { return per_domain_[did]; }

  std::map<DomainId, DomainStats> per_domain_;
  std::map<std::pair<DomainId, DomainId>, std::uint64_t> evictions_;
};

}  // namespace ccsim
