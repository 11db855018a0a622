#include "ccsim/analysis.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ccsim {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

}  // namespace

// Pure table-sizing arithmetic; degenerate geometries are allowed here
// even when they cannot back a runnable controller.
OverheadBreakdown storage_overhead(const ControllerConfig& cfg) {
  cfg.geometry.validate();
  const CacheGeometry& g = cfg.geometry;
  const std::uint64_t sid_bits = std::bit_width(g.num_sets - 1);

  OverheadBreakdown b;
  b.cst_bits = g.num_sets;
  b.ectable_bits =
      static_cast<std::uint64_t>(cfg.max_domains) *
      (1 + 4 + static_cast<std::uint64_t>(cfg.max_sets_per_domain) * sid_bits);
  b.tag_extra_bits = static_cast<std::uint64_t>(g.num_sets) * g.ways *
                     (g.did_bits + 1);
  b.pct_of_llc = 100.0 * b.total_bytes() /
                 static_cast<double>(g.capacity_bytes());
  return b;
}

std::uint64_t alloc_latency(std::uint64_t /*ch_num*/,
                            std::uint64_t sids_scanned) {
  return sids_scanned + 1;
}

std::uint64_t dealloc_latency(std::uint64_t ch_num) { return ch_num + 2; }

NiVerdict noninterference_verdict(std::span<const ProjectedOutcome> log_with,
                                  std::span<const ProjectedOutcome> log_without) {
  NiVerdict v;
  const std::size_t n = std::min(log_with.size(), log_without.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(log_with[i] == log_without[i])) {
      v.pass = false;
      v.divergence_index = i;
      std::ostringstream os;
      os << "outcome " << i << " differs: with={hit=" << log_with[i].hit
         << ",sid=" << log_with[i].sid << ",cycles=" << log_with[i].cycles
         << "} without={hit=" << log_without[i].hit << ",sid="
         << log_without[i].sid << ",cycles=" << log_without[i].cycles << "}";
      v.detail = os.str();
      return v;
    }
  }
  if (log_with.size() != log_without.size()) {
    v.pass = false;
    v.divergence_index = n;
    v.detail = "projected sequences have different lengths";
  }
  return v;
}

std::string emit_report(const StatsCollector& stats, const ReportOptions& opts) {
  std::ostringstream os;
  const std::vector<DomainId> dids = stats.domains();

  os << "# summary\n";
  os << "domain,level,category,accesses,hits,misses,permission_misses,"
        "miss_rate,writebacks\n";
  auto row = [&](DomainId did, const char* level, const char* cat,
                 const LevelCounters& c) {
    os << did << ',' << level << ',' << cat << ',' << c.accesses << ','
       << c.hits << ',' << c.misses << ',' << c.permission_misses << ','
       << fixed(c.miss_rate(), 6) << ',' << c.writebacks << '\n';
  };
  for (DomainId did : dids) {
    const DomainStats& d = stats.domain(did);
    row(did, "l1", "all", d.l1);
    row(did, "l2", "all", d.l2);
    row(did, "llc", "all", d.llc);
    row(did, "llc", "instr", d.llc_instr);
    row(did, "llc", "data", d.llc_data);
  }

  // Category means over the LLC instruction and data miss rates, both ways
  // of averaging, labeled.
  os << "# llc_miss_rate_means\n";
  os << "domain,arithmetic_mean,geometric_mean\n";
  for (DomainId did : dids) {
    const DomainStats& d = stats.domain(did);
    const double mi = d.llc_instr.miss_rate();
    const double md = d.llc_data.miss_rate();
    const double arith = (mi + md) / 2.0;
    const double geom = std::sqrt(mi * md);
    os << did << ',' << fixed(arith, 6) << ',' << fixed(geom, 6) << '\n';
  }

  if (opts.include_amat) {
    os << "# amat\n";
    os << "domain,accesses,total_cycles,mgmt_cycles,amat\n";
    for (DomainId did : dids) {
      const DomainStats& d = stats.domain(did);
      os << did << ',' << d.accesses << ',' << d.cycles << ','
         << d.mgmt_cycles << ',';
      os << (d.accesses == 0 ? "0.0000" : fixed(stats.amat(did), 4)) << '\n';
    }
  }

  os << "# eviction_matrix\n";
  os << "evictor";
  for (DomainId did : dids) os << ",victim_" << did;
  os << '\n';
  const auto matrix = stats.eviction_matrix();
  for (std::size_t i = 0; i < dids.size(); ++i) {
    os << dids[i];
    for (std::size_t j = 0; j < dids.size(); ++j) os << ',' << matrix[i][j];
    os << '\n';
  }
  return os.str();
}

std::string emit_overhead_csv(const OverheadBreakdown& b) {
  std::ostringstream os;
  os << "component,bits,kb\n";
  os << "cst," << b.cst_bits << ',' << fixed(OverheadBreakdown::kb(b.cst_bits), 2)
     << '\n';
  os << "ectable," << b.ectable_bits << ','
     << fixed(OverheadBreakdown::kb(b.ectable_bits), 2) << '\n';
  os << "tag_extra," << b.tag_extra_bits << ','
     << fixed(OverheadBreakdown::kb(b.tag_extra_bits), 2) << '\n';
  os << "total," << b.total_bits() << ','
     << fixed(OverheadBreakdown::kb(b.total_bits()), 2) << '\n';
  os << "pct_of_llc," << fixed(b.pct_of_llc, 2) << ",\n";
  return os.str();
}

}  // namespace ccsim
