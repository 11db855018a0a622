#include "ccsim/workloads.hpp"

#include <random>

namespace ccsim {

namespace {

MemOp pick_op(std::mt19937_64& rng, double write_fraction) {
  if (write_fraction <= 0.0) return MemOp::kRead;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  return coin(rng) < write_fraction ? MemOp::kWrite : MemOp::kRead;
}

}  // namespace

std::vector<ScenarioEvent> gen(const WorkloadSpec& spec, DomainId did,
                               std::uint32_t core) {
  std::vector<ScenarioEvent> events;
  const bool footprint_based = spec.kind != WorkloadKind::kConflict;
  if (spec.length == 0 || (footprint_based && spec.footprint_lines == 0) ||
      (!footprint_based && spec.conflict_lines == 0)) {
    return events;
  }
  events.reserve(spec.length);
  std::mt19937_64 rng(spec.seed);
  const std::uint32_t shift = CacheGeometry{spec.line_size_bytes}.line_offset_bits();

  auto push = [&](std::uint64_t line_addr, MemOp op) {
    events.emplace_back(AccessEvent{core, did, op, line_addr << shift});
  };

  switch (spec.kind) {
    case WorkloadKind::kWorkingSet: {
      std::uniform_int_distribution<std::uint64_t> pick(0, spec.footprint_lines - 1);
      for (std::uint64_t i = 0; i < spec.length; ++i) {
        push(spec.base_line + pick(rng), pick_op(rng, spec.write_fraction));
      }
      break;
    }
    case WorkloadKind::kSequential: {
      std::uint64_t offset = 0;
      for (std::uint64_t i = 0; i < spec.length; ++i) {
        push(spec.base_line + offset, pick_op(rng, spec.write_fraction));
        offset = (offset + spec.stride_lines) % spec.footprint_lines;
      }
      break;
    }
    case WorkloadKind::kConflict: {
      // Cyclic replay over a window of columns; every address in a column
      // shares the low conflict_index_bits, so the column collides in any
      // indexing of that width or narrower.
      const std::uint64_t cols = std::max<std::uint32_t>(spec.conflict_columns, 1);
      for (std::uint64_t i = 0; i < spec.length; ++i) {
        const std::uint64_t col = spec.conflict_column + i % cols;
        const std::uint64_t k = (i / cols) % spec.conflict_lines;
        const std::uint64_t line =
            spec.base_line + ((k << spec.conflict_index_bits) | col);
        push(line, pick_op(rng, spec.write_fraction));
      }
      break;
    }
    case WorkloadKind::kMixed: {
      std::uniform_int_distribution<std::uint64_t> pick(0, spec.footprint_lines - 1);
      std::uint64_t offset = 0;
      for (std::uint64_t i = 0; i < spec.length; ++i) {
        if (i % 2 == 0) {
          push(spec.base_line + pick(rng), pick_op(rng, spec.write_fraction));
        } else {
          push(spec.base_line + offset, pick_op(rng, spec.write_fraction));
          offset = (offset + spec.stride_lines) % spec.footprint_lines;
        }
      }
      break;
    }
  }
  return events;
}

std::vector<ScenarioEvent> build_prime_probe(const PrimeProbeSpec& spec) {
  std::vector<ScenarioEvent> events;
  const std::uint32_t shift =
      CacheGeometry{spec.line_size_bytes}.line_offset_bits();
  auto line_in_column = [&](std::uint64_t k) {
    return spec.attacker_base_line +
           ((k << spec.index_bits) | spec.target_index);
  };
  auto access = [&](DomainId did, std::uint32_t core, std::uint64_t line) {
    events.emplace_back(AccessEvent{core, did, MemOp::kRead, line << shift});
  };

  events.emplace_back(BarrierEvent{"prime"});
  for (std::uint64_t k = 0; k < spec.ways; ++k) {
    access(spec.attacker, spec.attacker_core, line_in_column(k + 1));
  }
  events.emplace_back(BarrierEvent{"victim"});
  const std::uint64_t victim_line =
      spec.victim_line != 0
          ? spec.victim_line
          : ((static_cast<std::uint64_t>(spec.ways) + 1) << spec.index_bits) |
                spec.target_index;
  access(spec.victim, spec.victim_core, victim_line);
  events.emplace_back(BarrierEvent{"probe"});
  for (std::uint64_t k = 0; k < spec.ways; ++k) {
    access(spec.attacker, spec.attacker_core, line_in_column(k + 1));
  }
  return events;
}

std::vector<ScenarioEvent> build_occupancy_probe(const OccupancySpec& spec) {
  std::vector<ScenarioEvent> events;
  const std::vector<ScenarioEvent> pass =
      gen(spec.attacker_walk, spec.attacker, spec.attacker_core);

  events.emplace_back(BarrierEvent{"fill"});
  events.insert(events.end(), pass.begin(), pass.end());
  events.emplace_back(BarrierEvent{"victim"});
  std::vector<ScenarioEvent> victim =
      gen(spec.victim, spec.victim_did, spec.victim_core);
  events.insert(events.end(), victim.begin(), victim.end());
  events.emplace_back(BarrierEvent{"walk"});
  events.insert(events.end(), pass.begin(), pass.end());
  return events;
}

}  // namespace ccsim
