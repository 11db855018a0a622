#pragma once

#include <cstdint>
#include <vector>

#include "ccsim/scenario.hpp"

namespace ccsim {

enum class WorkloadKind : std::uint8_t {
  kWorkingSet,  // uniform random over a footprint of F lines
  kSequential,  // strided walk over the footprint, wrapping
  kConflict,    // n lines sharing one index column
  kMixed,       // working-set and sequential interleaved
};

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::kWorkingSet;
  std::uint64_t length = 0;  // number of accesses
  std::uint64_t seed = 0;
  std::uint64_t base_line = 0;
  std::uint64_t footprint_lines = 1;
  std::uint64_t stride_lines = 1;
  // CONFLICT: conflict_lines addresses per column, all congruent modulo
  // 2^index_bits, so they collide in any indexing that uses index_bits or
  // fewer bits. conflict_columns > 1 walks a window of adjacent columns
  // (column-major), giving column-concentrated footprints.
  std::uint32_t conflict_lines = 16;
  std::uint32_t conflict_columns = 1;
  std::uint32_t conflict_index_bits = 14;
  std::uint32_t conflict_column = 0;  // first column of the window
  std::uint32_t line_size_bytes = 64;
  double write_fraction = 0.0;
};

// Deterministic expansion: the same spec and seed yield the same events.
std::vector<ScenarioEvent> gen(const WorkloadSpec& spec, DomainId did,
                               std::uint32_t core);

// Conflict-based probe: the attacker primes every way of one index column,
// the victim touches an address mapping there, the attacker re-walks its
// prime set. Emits BARRIER prime/victim/probe markers.
struct PrimeProbeSpec {
  DomainId attacker = 2;
  DomainId victim = 1;
  std::uint32_t attacker_core = 1;
  std::uint32_t victim_core = 0;
  std::uint32_t target_index = 0;
  std::uint32_t index_bits = 14;  // of the targeted indexing scheme
  std::uint32_t ways = 16;
  std::uint32_t line_size_bytes = 64;
  std::uint64_t attacker_base_line = 0;
  std::uint64_t victim_line = 0;  // 0: derive one congruent to the column
};
std::vector<ScenarioEvent> build_prime_probe(const PrimeProbeSpec& spec);

// Occupancy probe: the attacker fills its footprint (one pass of the walk
// workload), the victim runs, the attacker re-walks the identical pass
// counting self-misses. Emits BARRIER fill/victim/walk markers.
struct OccupancySpec {
  DomainId attacker = 2;
  std::uint32_t attacker_core = 1;
  WorkloadSpec attacker_walk;  // one deterministic pass, replayed twice
  DomainId victim_did = 1;
  std::uint32_t victim_core = 0;
  WorkloadSpec victim;
};
std::vector<ScenarioEvent> build_occupancy_probe(const OccupancySpec& spec);

}  // namespace ccsim
