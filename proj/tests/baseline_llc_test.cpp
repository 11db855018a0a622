#include "ccsim/baseline_llc.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <random>

using namespace ccsim;

namespace {

ControllerConfig small_config(std::uint32_t sets = 16, std::uint32_t ways = 4) {
  ControllerConfig cfg;
  cfg.geometry = CacheGeometry{64, sets, ways, 4};
  cfg.max_domains = 16;
  cfg.max_sets_per_domain = sets / 2;
  cfg.os_principal_sets = sets / 2;
  return cfg;
}

AccessRequest req(DomainId did, std::uint64_t addr, MemOp op = MemOp::kRead) {
  AccessRequest r;
  r.did = did;
  r.op = op;
  r.address = addr;
  return r;
}

// Tiny self-contained LRU list used as the thrash oracle.
struct LruOracle {
  std::size_t capacity;
  std::deque<std::uint64_t> stack;

  bool access(std::uint64_t line) {
    auto it = std::find(stack.begin(), stack.end(), line);
    if (it != stack.end()) {
      stack.erase(it);
      stack.push_front(line);
      return true;
    }
    if (stack.size() == capacity) stack.pop_back();
    stack.push_front(line);
    return false;
  }
};

TEST(SharedBaseline, CrossDomainHitsAreInsecureByDesign) {
  SharedLlc llc(small_config());
  EXPECT_FALSE(llc.access(req(1, 0x1000)).hit);
  EXPECT_TRUE(llc.access(req(2, 0x1000)).hit);
  EXPECT_EQ(llc.access(req(2, 0x1000)).cycles, 80u);
}

TEST(SharedBaseline, CapacityHoldsWaysDistinctTags) {
  SharedLlc llc(small_config(16, 16));
  for (std::uint64_t k = 0; k < 16; ++k) {
    const AccessOutcome out = llc.access(req(1, (k << 4 << 6)));  // column 0
    EXPECT_FALSE(out.victim.valid);
  }
  for (std::uint64_t k = 0; k < 16; ++k) {
    EXPECT_TRUE(llc.access(req(1, (k << 4 << 6))).hit);
  }
}

TEST(SharedBaseline, SeventeenCyclicTagsThrash) {
  SharedLlc llc(small_config(16, 16));
  LruOracle oracle{16, {}};
  int warm = 0, measured = 0, misses = 0, oracle_misses = 0;
  for (int round = 0; round < 20; ++round) {
    for (std::uint64_t k = 0; k < 17; ++k) {
      const std::uint64_t addr = (k << 4) << 6;  // one index column
      const bool hit = llc.access(req(1, addr)).hit;
      const bool oracle_hit = oracle.access(k);
      if (round < 2) {
        ++warm;
        continue;
      }
      ++measured;
      misses += hit ? 0 : 1;
      oracle_misses += oracle_hit ? 0 : 1;
      EXPECT_EQ(hit, oracle_hit);
    }
  }
  ASSERT_GT(measured, 0);
  EXPECT_EQ(misses, measured);         // 100% steady-state miss rate
  EXPECT_EQ(misses, oracle_misses);
  (void)warm;
}

// The shared baseline must equal the generic array with DID checks skipped.
TEST(SharedBaseline, MatchesPlainCacheCoreSemantics) {
  ControllerConfig cfg = small_config();
  SharedLlc llc(cfg);
  CacheArray plain(cfg.geometry);

  std::mt19937_64 rng(4242);
  for (int i = 0; i < 5000; ++i) {
    const DomainId did = static_cast<DomainId>(rng() % 4);
    const std::uint64_t line = rng() % 256;
    const std::uint32_t set =
        static_cast<std::uint32_t>(line % cfg.geometry.num_sets);
    const bool expect_hit = plain.lookup_plain(set, line).hit();
    if (!expect_hit) {
      std::vector<Slot> pool;
      for (std::uint32_t w = 0; w < cfg.geometry.ways; ++w) {
        pool.push_back({set, w});
      }
      plain.fill(plain.select_victim(pool), line, did, false, false);
    }
    EXPECT_EQ(llc.access(req(did, line << 6)).hit, expect_hit);
  }
}

TEST(WayPartition, OneWayDomainThrashesOnTwoConflictingTags) {
  WayPartLlc llc(small_config(16, 4));
  llc.register_domain(1, IsolationMode::kExclusive);
  llc.allocate(1, 4);  // 4 sets of 4 ways -> 1 way
  ASSERT_EQ(llc.partition().masks.at(1), 0x1ull);

  int misses = 0, measured = 0;
  for (int round = 0; round < 10; ++round) {
    for (std::uint64_t k = 0; k < 2; ++k) {
      const bool hit = llc.access(req(1, (k << 4) << 6)).hit;
      if (round == 0) continue;
      ++measured;
      misses += hit ? 0 : 1;
    }
  }
  EXPECT_EQ(misses, measured);  // direct-mapped thrash
}

TEST(WayPartition, DisjointMasksNeverCrossEvict) {
  WayPartLlc llc(small_config(16, 4));
  llc.register_domain(1, IsolationMode::kExclusive);
  llc.register_domain(2, IsolationMode::kExclusive);
  llc.allocate(1, 4);
  llc.allocate(2, 4);

  llc.access(req(1, 0x0));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const AccessOutcome out = llc.access(req(2, (rng() % 128) << 6));
    if (out.victim.valid) EXPECT_EQ(out.victim.did, 2);
  }
  EXPECT_TRUE(llc.access(req(1, 0x0)).hit);
}

TEST(WayPartition, CapacityEquivalenceArithmetic) {
  // 1,024 chunk sets of a 16-way cache carry the same bytes as one way of
  // a 16,384-set cache.
  const CacheGeometry chunked{64, 16384, 16, 4};
  const std::uint64_t chunk_bytes = 1024ull * chunked.ways * 64;
  const std::uint64_t way_bytes = 16384ull * 1 * 64;
  EXPECT_EQ(chunk_bytes, way_bytes);
  EXPECT_EQ(chunk_bytes, 1024ull * 1024);  // 1 MB

  WayPartLlc llc(ControllerConfig{});  // paper geometry
  llc.register_domain(1, IsolationMode::kExclusive);
  EXPECT_EQ(llc.allocate(1, 1024).sids, (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(llc.allocate(2, 2048).sids, (std::vector<std::uint32_t>{1, 2}));
}

TEST(WayPartition, UnmappedExclusiveDomainIsAnError) {
  WayPartLlc llc(small_config());
  llc.register_domain(1, IsolationMode::kExclusive);
  EXPECT_THROW(llc.access(req(1, 0)), SimError);
}

TEST(WayPartition, MainstreamDomainSharesNidWays) {
  WayPartLlc llc(small_config(16, 4));
  llc.register_domain(1, IsolationMode::kExclusive);
  llc.register_domain(3, IsolationMode::kMainstream);
  llc.allocate(1, 4);
  const AccessOutcome out = llc.access(req(3, 0x0));
  EXPECT_FALSE(out.hit);
  EXPECT_NE(out.way, 0u);  // way 0 belongs to domain 1
}

TEST(WayPartition, KeepsOneWayForTheNid) {
  WayPartLlc llc(small_config(16, 2));
  llc.register_domain(1, IsolationMode::kExclusive);
  llc.allocate(1, 8);  // takes way 0
  llc.register_domain(2, IsolationMode::kExclusive);
  EXPECT_THROW(llc.allocate(2, 8), SimError);  // would take the last way
}

TEST(WayPartition, ExplicitPartitionMapValidation) {
  WayPartitionMap map;
  map.masks[1] = 0b0011;
  map.masks[2] = 0b0110;  // overlaps domain 1
  EXPECT_THROW(map.validate(4), SimError);
  map.masks[2] = 0b0100;
  EXPECT_NO_THROW(map.validate(4));
  map.masks[2] = 0b1100;
  EXPECT_THROW(map.validate(4), SimError);  // nothing left for the NI-D
}

}  // namespace
