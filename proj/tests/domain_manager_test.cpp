#include "ccsim/domain_manager.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ccsim/chunked_llc.hpp"

using namespace ccsim;

namespace {

ControllerConfig manager_config() {
  ControllerConfig cfg;
  cfg.geometry = CacheGeometry{64, 64, 4, 4};
  cfg.max_domains = 16;
  cfg.max_sets_per_domain = 16;
  cfg.os_principal_sets = 16;
  return cfg;
}

struct Fixture {
  Fixture() : llc(manager_config()), manager(llc, 16, 64, /*default sets=*/4) {}
  ChunkedLlc llc;
  DomainManager manager;
};

AccessRequest req(DomainId did, std::uint64_t addr, bool shared) {
  AccessRequest r;
  r.did = did;
  r.address = addr;
  r.shared = shared;
  return r;
}

TEST(RegisterDomain, SupportsSixteenParallelDomains) {
  Fixture f;
  for (DomainId did = 1; did < 16; ++did) {
    DomainConfig cfg;
    cfg.did = did;
    cfg.mode = IsolationMode::kExclusive;
    cfg.requested_sets = 1;
    EXPECT_TRUE(f.manager.register_domain(cfg).has_value()) << did;
  }
  DomainConfig overflow;
  overflow.did = 16;
  overflow.mode = IsolationMode::kMainstream;
  EXPECT_THROW(f.manager.register_domain(overflow), SimError);
}

TEST(RegisterDomain, MainstreamGetsNoAllocation) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 3;
  cfg.mode = IsolationMode::kMainstream;
  EXPECT_FALSE(f.manager.register_domain(cfg).has_value());
  EXPECT_FALSE(f.llc.has_allocation(3));
}

TEST(RegisterDomain, MainstreamWithChunkRequestIsRejected) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 3;
  cfg.mode = IsolationMode::kMainstream;
  cfg.requested_sets = 4;
  EXPECT_THROW(f.manager.register_domain(cfg), SimError);
}

TEST(RegisterDomain, ExclusiveUsesConfiguredDefault) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 2;
  cfg.mode = IsolationMode::kExclusive;
  const auto receipt = f.manager.register_domain(cfg);
  ASSERT_TRUE(receipt.has_value());
  EXPECT_EQ(receipt->ch_num, 4u);
  EXPECT_EQ(receipt->index_bits, 2u);  // log2(default)
}

TEST(RegisterDomain, DefaultOf512OnFullScaleConfig) {
  ChunkedLlc llc((ControllerConfig()));
  DomainManager manager(llc, 16, 64);
  DomainConfig cfg;
  cfg.did = 1;
  cfg.mode = IsolationMode::kExclusive;
  const auto receipt = manager.register_domain(cfg);
  ASSERT_TRUE(receipt.has_value());
  EXPECT_EQ(receipt->ch_num, 512u);
  EXPECT_EQ(receipt->index_bits, 9u);
}

TEST(RegisterDomain, DuplicateDidRejected) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 5;
  cfg.mode = IsolationMode::kMainstream;
  f.manager.register_domain(cfg);
  try {
    f.manager.register_domain(cfg);
    FAIL() << "expected DID_IN_USE";
  } catch (const SimError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDidInUse);
  }
}

TEST(RegisterDomain, FailedAllocationLeavesDidFree) {
  Fixture f;
  DomainConfig big;
  big.did = 1;
  big.mode = IsolationMode::kExclusive;
  big.requested_sets = 16;
  f.manager.register_domain(big);
  DomainConfig more;
  more.did = 2;
  more.mode = IsolationMode::kExclusive;
  more.requested_sets = 16;  // 48 allocatable sets minus 16 leaves 32, ok
  f.manager.register_domain(more);
  DomainConfig broke;
  broke.did = 3;
  broke.mode = IsolationMode::kExclusive;
  broke.requested_sets = 8;  // 40 of 48 allocatable sets taken
  f.manager.register_domain(broke);
  DomainConfig fails;
  fails.did = 4;
  fails.mode = IsolationMode::kExclusive;
  fails.requested_sets = 16;
  EXPECT_THROW(f.manager.register_domain(fails), SimError);
  // The id was not burned by the failed registration.
  fails.requested_sets = 8;
  EXPECT_TRUE(f.manager.register_domain(fails).has_value());
}

TEST(Teardown, ExclusiveDomainPaysDeallocLatency) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 1;
  cfg.mode = IsolationMode::kExclusive;
  cfg.requested_sets = 4;
  f.manager.register_domain(cfg);
  std::uint64_t cycles = 0;
  f.manager.teardown_domain(1, &cycles);
  EXPECT_EQ(cycles, 4u + 2);
  EXPECT_FALSE(f.llc.is_registered(1));
}

TEST(Teardown, SweepsMainstreamLinesOfTheDomain) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 2;
  cfg.mode = IsolationMode::kMainstream;
  f.manager.register_domain(cfg);
  for (std::uint64_t i = 0; i < 5; ++i) {
    f.llc.access(req(2, (i << 6), false));
  }
  const FlushStats flush = f.manager.teardown_domain(2);
  EXPECT_EQ(flush.lines_invalidated, 5u);
  // A reused id starts cold: no stale-ownership hits.
  f.manager.register_domain(cfg);
  EXPECT_FALSE(f.llc.access(req(2, 0, false)).hit);
}

TEST(Teardown, DidReusableAfterwards) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 7;
  cfg.mode = IsolationMode::kExclusive;
  cfg.requested_sets = 2;
  f.manager.register_domain(cfg);
  f.manager.teardown_domain(7);
  cfg.mode = IsolationMode::kMainstream;
  cfg.requested_sets.reset();
  EXPECT_NO_THROW(f.manager.register_domain(cfg));
  EXPECT_THROW(f.manager.teardown_domain(9), SimError);
}

TEST(Classify, SharedRegionMembershipIsHalfOpen) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 1;
  cfg.mode = IsolationMode::kMainstream;
  cfg.shared_regions = {{0x1000, 0x2000}};
  f.manager.register_domain(cfg);

  EXPECT_TRUE(f.manager.classify(1, 0x1000).shared);
  EXPECT_TRUE(f.manager.classify(1, 0x1fff).shared);
  EXPECT_FALSE(f.manager.classify(1, 0x2000).shared);  // end is exclusive
  EXPECT_FALSE(f.manager.classify(1, 0xfff).shared);
  // NI-D requests always carry did 0 / shared=false semantics.
  const RequestMeta nid = f.manager.classify(kNid, 0x1000);
  EXPECT_EQ(nid.did, kNid);
  EXPECT_FALSE(nid.shared);
  EXPECT_THROW(f.manager.classify(9, 0x0), SimError);
}

TEST(Classify, MisalignedOrOverlappingRegionsRejected) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 1;
  cfg.mode = IsolationMode::kMainstream;
  cfg.shared_regions = {{0x1001, 0x2000}};
  EXPECT_THROW(f.manager.register_domain(cfg), SimError);
  cfg.shared_regions = {{0x1000, 0x3000}, {0x2000, 0x4000}};
  EXPECT_THROW(f.manager.register_domain(cfg), SimError);
}

TEST(Classify, AgreesWithIntervalOracle) {
  Fixture f;
  DomainConfig cfg;
  cfg.did = 1;
  cfg.mode = IsolationMode::kMainstream;
  cfg.shared_regions = {{0x0, 0x400}, {0x1000, 0x1400}, {0x8000, 0x8040}};
  f.manager.register_domain(cfg);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t addr = rng() % 0x10000;
    bool expected = false;
    for (const AddressRange& r : cfg.shared_regions) {
      if (addr >= r.begin && addr < r.end) expected = true;
    }
    EXPECT_EQ(f.manager.classify(1, addr).shared, expected) << addr;
  }
}

}  // namespace
