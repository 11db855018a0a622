#include "ccsim/hierarchy.hpp"

#include <gtest/gtest.h>

#include "ccsim/engine.hpp"

using namespace ccsim;

namespace {

AccessRequest req(DomainId did, std::uint64_t addr, MemOp op = MemOp::kRead,
                  std::uint32_t core = 0) {
  AccessRequest r;
  r.core = core;
  r.did = did;
  r.op = op;
  r.address = addr;
  return r;
}

// Toy stack small enough for exhaustive inclusion scans.
SimConfig toy_stack() {
  SimConfig cfg;
  cfg.llc.geometry = CacheGeometry{64, 64, 4, 4};
  cfg.llc.max_domains = 8;
  cfg.llc.max_sets_per_domain = 16;
  cfg.llc.os_principal_sets = 32;
  cfg.hierarchy.l1i = CacheGeometry{64, 2, 2, 1};
  cfg.hierarchy.l1d = CacheGeometry{64, 2, 2, 1};
  cfg.hierarchy.l2 = CacheGeometry{64, 4, 4, 1};
  cfg.hierarchy.num_cores = 2;
  cfg.default_exclusive_sets = 8;
  return cfg;
}

TEST(HierarchyConfig, RejectsNonInclusiveCapacities) {
  SimConfig cfg = toy_stack();
  cfg.hierarchy.l2 = CacheGeometry{64, 4096, 16, 1};  // bigger than the LLC
  EXPECT_THROW(Simulation sim(cfg), SimError);
}

TEST(MemoryAccess, ColdAccessSumsAllLevelLatencies) {
  Simulation sim(SimConfig::paper_defaults());
  const AccessOutcome out = sim.hierarchy()->memory_access(0, req(kNid, 0x1f40));
  EXPECT_FALSE(out.hit);
  EXPECT_EQ(out.served_by, Level::kMemory);
  EXPECT_EQ(out.cycles, 4u + 14 + 82 + 200);
}

TEST(MemoryAccess, ImmediateRepeatHitsL1) {
  Simulation sim(SimConfig::paper_defaults());
  sim.hierarchy()->memory_access(0, req(kNid, 0x1f40));
  const AccessOutcome out = sim.hierarchy()->memory_access(0, req(kNid, 0x1f40));
  EXPECT_TRUE(out.hit);
  EXPECT_EQ(out.served_by, Level::kL1);
  EXPECT_EQ(out.cycles, 4u);
}

TEST(MemoryAccess, IfetchesUseTheInstructionL1) {
  Simulation sim(toy_stack());
  sim.hierarchy()->memory_access(0, req(kNid, 0x40, MemOp::kIfetch));
  // A data access to the same line does not hit the instruction L1.
  const AccessOutcome out = sim.hierarchy()->memory_access(0, req(kNid, 0x40));
  EXPECT_NE(out.served_by, Level::kL1);
  const AccessOutcome refetch =
      sim.hierarchy()->memory_access(0, req(kNid, 0x40, MemOp::kIfetch));
  EXPECT_EQ(refetch.served_by, Level::kL1);
}

TEST(MemoryAccess, SchedulingMismatchFails) {
  Simulation sim(toy_stack());
  EXPECT_THROW(sim.hierarchy()->memory_access(0, req(3, 0x0)), SimError);
}

TEST(MemoryAccess, LlcEvictionBackInvalidatesPrivateCopies) {
  SimConfig cfg = toy_stack();
  cfg.model_hierarchy = true;
  Simulation sim(cfg);
  Hierarchy& h = *sim.hierarchy();

  // Park one NI-D line, then force it out of the LLC by flooding its
  // mainstream column with distinct congruent lines.
  h.memory_access(0, req(kNid, 0x0));
  ASSERT_EQ(h.memory_access(0, req(kNid, 0x0)).served_by, Level::kL1);
  for (std::uint64_t k = 1; k <= 8; ++k) {
    h.memory_access(0, req(kNid, (k << 5) << 6));  // same principal column
  }
  // The line is gone from the LLC, so the repeat cannot be a private hit.
  const AccessOutcome out = h.memory_access(0, req(kNid, 0x0));
  EXPECT_EQ(out.served_by, Level::kMemory);
  EXPECT_TRUE(h.check_inclusion());
}

TEST(ContextSwitch, EmptyPrivateLevelsFlushNothing) {
  Simulation sim(toy_stack());
  sim.manager().register_domain({1, IsolationMode::kExclusive, 8, {}});
  EXPECT_EQ(sim.hierarchy()->context_switch(0, 1), (FlushStats{0, 0}));
  EXPECT_EQ(sim.hierarchy()->current_did(0), 1);
}

TEST(ContextSwitch, WorkingSetMovesToLlcOnly) {
  Simulation sim(toy_stack());
  sim.manager().register_domain({1, IsolationMode::kExclusive, 8, {}});
  sim.hierarchy()->context_switch(0, 1);
  sim.hierarchy()->memory_access(0, req(1, 0x80));
  sim.hierarchy()->memory_access(0, req(1, 0x80, MemOp::kWrite));

  const FlushStats flushed = sim.hierarchy()->context_switch(0, 1);
  EXPECT_GT(flushed.lines_invalidated, 0u);
  EXPECT_GE(flushed.dirty_writebacks, 1u);  // the written L1 line

  // Same domain, same core: the switch still flushed, so L1/L2 miss while
  // the LLC serves the line.
  const AccessOutcome out = sim.hierarchy()->memory_access(0, req(1, 0x80));
  EXPECT_EQ(out.served_by, Level::kLlc);
  EXPECT_TRUE(out.hit);
}

TEST(ContextSwitch, UnregisteredTargetRejectedByEngine) {
  Simulation sim(toy_stack());
  const std::vector<ScenarioEvent> events{SwitchEvent{0, 5}};
  EXPECT_THROW(sim.run(events), SimError);
}

TEST(Amat, AllL1HitsCostFourCycles) {
  StatsCollector stats;
  for (int i = 0; i < 5; ++i) stats.record_request(1, 4);
  EXPECT_DOUBLE_EQ(stats.amat(1), 4.0);
}

TEST(Amat, EndToEndColdThenHits) {
  Simulation sim(SimConfig::paper_defaults());
  Hierarchy& h = *sim.hierarchy();
  h.memory_access(0, req(kNid, 0x0));  // cold: 4+14+82+200
  for (int i = 0; i < 3; ++i) h.memory_access(0, req(kNid, 0x0));
  EXPECT_DOUBLE_EQ(sim.run({}).stats.amat(kNid), (300.0 + 3 * 4.0) / 4.0);
}

TEST(Amat, HalfHitsHalfFullMisses) {
  // Arithmetic check straight from the definition: (4 + 300) / 2.
  StatsCollector stats;
  stats.record_request(1, 4);
  stats.record_request(1, 300);
  EXPECT_DOUBLE_EQ(stats.amat(1), 152.0);
  EXPECT_THROW(stats.amat(2), SimError);
}

TEST(Amat, MatchesEventLogRecomputation) {
  SimConfig cfg = toy_stack();
  cfg.seed = 11;
  Simulation sim(cfg);
  std::vector<ScenarioEvent> events;
  events.emplace_back(RegisterEvent{1, IsolationMode::kExclusive, 8, {}});
  events.emplace_back(SwitchEvent{0, 1});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    events.emplace_back(AccessEvent{0, 1, i % 3 ? MemOp::kRead : MemOp::kWrite,
                                    (rng() % 128) << 6});
  }
  const ReplayResult result = sim.run(events);
  std::uint64_t cycles = 0;
  for (const LogRecord& r : result.outcomes) cycles += r.out.cycles;
  EXPECT_DOUBLE_EQ(result.stats.amat(1),
                   static_cast<double>(cycles) / result.outcomes.size());
}

// Inclusion holds across accesses, switches and chunk management.
TEST(Inclusion, HoldsUnderMixedOperations) {
  SimConfig cfg = toy_stack();
  Simulation sim(cfg);
  std::vector<ScenarioEvent> events;
  events.emplace_back(RegisterEvent{1, IsolationMode::kExclusive, 8, {}});
  events.emplace_back(RegisterEvent{2, IsolationMode::kMainstream, {}, {}});
  events.emplace_back(SwitchEvent{0, 1});
  events.emplace_back(SwitchEvent{1, 2});
  std::mt19937_64 rng(13);
  for (int i = 0; i < 800; ++i) {
    if (i == 300) events.emplace_back(ResizeEvent{1, 16});
    if (i == 600) events.emplace_back(ResizeEvent{1, 4});
    const bool second = rng() % 2 == 0;
    events.emplace_back(AccessEvent{second ? 1u : 0u,
                                    static_cast<DomainId>(second ? 2 : 1),
                                    rng() % 5 ? MemOp::kRead : MemOp::kWrite,
                                    (rng() % 256) << 6});
  }
  sim.run(events);
  EXPECT_TRUE(sim.hierarchy()->check_inclusion());
}

}  // namespace
