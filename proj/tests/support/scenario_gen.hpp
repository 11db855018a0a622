#pragma once

// Seeded scenario builders shared by the fuzz tests and the acceptance
// suite: small-geometry configurations, random two-domain interleavings and
// the attack-shaped schedules used by the non-interference harness.

#include <random>
#include <vector>

#include "ccsim/engine.hpp"
#include "ccsim/workloads.hpp"

namespace ccsim::testing {

// 64 sets x 4 ways, 16 principal sets, LLC-level replay.
inline SimConfig small_config(LlcKind kind, std::uint64_t seed = 1) {
  SimConfig cfg;
  cfg.llc.geometry = CacheGeometry{64, 64, 4, 4};
  cfg.llc.max_domains = 8;
  cfg.llc.max_sets_per_domain = 32;
  cfg.llc.os_principal_sets = 16;
  cfg.kind = kind;
  cfg.seed = seed;
  cfg.model_hierarchy = false;
  cfg.default_exclusive_sets = 16;
  return cfg;
}

// Victim (did 1) and attacker (did 2), both exclusive, no shared regions,
// interleaved over a colliding address window. `shape` rotates between a
// random interleave, a prime+probe schedule and an occupancy schedule.
inline std::vector<ScenarioEvent> make_ni_scenario(const SimConfig& cfg,
                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const CacheGeometry& g = cfg.llc.geometry;
  std::vector<ScenarioEvent> events;

  RegisterEvent victim;
  victim.did = 1;
  victim.mode = IsolationMode::kExclusive;
  victim.sets = 8u << (seed % 3);  // 8, 16 or 32 sets
  events.emplace_back(victim);
  RegisterEvent attacker;
  attacker.did = 2;
  attacker.mode = IsolationMode::kExclusive;
  attacker.sets = 8;
  events.emplace_back(attacker);
  events.emplace_back(SwitchEvent{0, 1});
  events.emplace_back(SwitchEvent{1, 2});

  const std::uint32_t shape = static_cast<std::uint32_t>(seed % 3);
  if (shape == 1) {
    PrimeProbeSpec spec;
    spec.attacker = 2;
    spec.victim = 1;
    spec.index_bits = g.index_bits();
    spec.ways = g.ways;
    spec.line_size_bytes = g.line_size_bytes;
    spec.target_index =
        static_cast<std::uint32_t>(rng() % g.num_sets);
    auto body = build_prime_probe(spec);
    events.insert(events.end(), body.begin(), body.end());
    return events;
  }
  if (shape == 2) {
    OccupancySpec spec;
    spec.attacker = 2;
    spec.victim_did = 1;
    spec.attacker_walk.kind = WorkloadKind::kConflict;
    spec.attacker_walk.conflict_lines = g.ways;
    spec.attacker_walk.conflict_columns = 8;
    spec.attacker_walk.conflict_index_bits = g.index_bits();
    spec.attacker_walk.length = 8ull * g.ways;
    spec.attacker_walk.line_size_bytes = g.line_size_bytes;
    spec.victim = spec.attacker_walk;
    spec.victim.base_line = static_cast<std::uint64_t>(g.ways + 1)
                            << g.index_bits();
    spec.victim.length = (1 + seed % 3) * 8ull * g.ways;
    auto body = build_occupancy_probe(spec);
    events.insert(events.end(), body.begin(), body.end());
    return events;
  }

  // Random interleave: both domains walk working sets larger than the
  // shared-model capacity window they collide in.
  std::uniform_int_distribution<std::uint64_t> line(0, 4 * g.num_sets - 1);
  std::uniform_int_distribution<int> coin(0, 99);
  const std::uint64_t n = 600 + rng() % 400;
  for (std::uint64_t i = 0; i < n; ++i) {
    AccessEvent e;
    const bool attacker_turn = coin(rng) < 50;
    e.did = attacker_turn ? 2 : 1;
    e.core = attacker_turn ? 1 : 0;
    e.op = coin(rng) < 20 ? MemOp::kWrite : MemOp::kRead;
    e.address = line(rng) << g.line_offset_bits();
    events.emplace_back(e);
  }
  return events;
}

}  // namespace ccsim::testing
