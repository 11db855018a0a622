#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ccsim/chunked_llc.hpp"
#include "ccsim/stats.hpp"
#include "ccsim/types.hpp"

namespace ccsim {

// Extra storage the chunked controller adds next to the data array. All
// quantities are exact bit counts; KB (1,024 bytes) and percent are display
// conversions only.
struct OverheadBreakdown {
  std::uint64_t cst_bits = 0;
  std::uint64_t ectable_bits = 0;
  std::uint64_t tag_extra_bits = 0;

  std::uint64_t total_bits() const {
    return cst_bits + ectable_bits + tag_extra_bits;
  }
  double total_bytes() const { return static_cast<double>(total_bits()) / 8.0; }
  double pct_of_llc = 0.0;

  static double kb(std::uint64_t bits) {
    return static_cast<double>(bits) / 8.0 / 1024.0;
  }
};

// CST: one bit per set. EC-TABLE: per domain one ALLOC bit, a 4-bit INDEX
// field and max_sets_per_domain SIDs of ceil(log2(num_sets)) bits each.
// Tag extension: (did_bits + 1 shared bit) per line.
OverheadBreakdown storage_overhead(const ControllerConfig& cfg);

// Chunk management latencies: one cycle per CST slot scanned plus one
// EC-TABLE update; de-allocation takes one cycle per owned set plus an
// EC-TABLE read and update.
std::uint64_t alloc_latency(std::uint64_t ch_num, std::uint64_t sids_scanned);
std::uint64_t dealloc_latency(std::uint64_t ch_num);

// Observable projection of one access used by the non-interference check:
// hit/miss (permission misses count as misses), serving set, exact cycles.
struct ProjectedOutcome {
  bool hit = false;
  std::uint32_t sid = 0;
  std::uint64_t cycles = 0;
  friend bool operator==(const ProjectedOutcome&,
                         const ProjectedOutcome&) = default;
};

struct NiVerdict {
  bool pass = true;
  std::size_t divergence_index = 0;  // first differing position on FAIL
  std::string detail;
};

// Element-wise comparison of a subject domain's projected outcome
// sequences from two replays of the same subject event subsequence.
NiVerdict noninterference_verdict(std::span<const ProjectedOutcome> log_with,
                                  std::span<const ProjectedOutcome> log_without);

struct ReportOptions {
  bool include_amat = true;
};

// Deterministic comma-separated report: per-domain per-level counters, the
// labeled LLC category means, AMAT and the eviction matrix. Pure function
// of the stats snapshot; an empty run yields headers only.
std::string emit_report(const StatsCollector& stats,
                        const ReportOptions& opts = {});

std::string emit_overhead_csv(const OverheadBreakdown& breakdown);

}  // namespace ccsim
