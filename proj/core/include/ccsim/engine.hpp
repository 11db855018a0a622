#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ccsim/analysis.hpp"
#include "ccsim/baseline_llc.hpp"
#include "ccsim/chunked_llc.hpp"
#include "ccsim/domain_manager.hpp"
#include "ccsim/hierarchy.hpp"
#include "ccsim/scenario.hpp"
#include "ccsim/stats.hpp"

namespace ccsim {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct SimConfig {
  ControllerConfig llc{};
  HierarchyConfig hierarchy{};
  LlcKind kind = LlcKind::kChunked;
  std::uint64_t seed = kDefaultSeed;
  // When false, accesses drive the LLC model directly (no private levels);
  // cycles are then the LLC access latencies.
  bool model_hierarchy = true;
  std::uint32_t default_exclusive_sets = 512;

  // Table-style default: 16 MB 16-way LLC, 16 domains, 8,192 sets per
  // domain cap, half the sets principal.
  static SimConfig paper_defaults();
};

std::unique_ptr<LlcModel> make_llc(const SimConfig& cfg);

struct LogRecord {
  std::size_t event_index = 0;  // position in the replayed event sequence
  AccessRequest req;
  AccessOutcome out;
};

struct ReplayResult {
  std::vector<LogRecord> outcomes;  // one per ACCESS event, in order
  // (position in `outcomes` at the barrier, label)
  std::vector<std::pair<std::size_t, std::string>> barriers;
  StatsCollector stats;
  std::uint64_t mgmt_cycles = 0;

  std::vector<ProjectedOutcome> project(DomainId subject) const;
  // Outcome indices [first, last) between two barrier labels.
  std::pair<std::size_t, std::size_t> phase(const std::string& label) const;
};

// One simulation instance: a domain manager, an LLC model and (optionally)
// the private cache hierarchy, replaying a totally ordered event sequence.
class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg);
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  ReplayResult run(std::span<const ScenarioEvent> events);

  LlcModel& llc() { return *llc_; }
  DomainManager& manager() { return *manager_; }
  Hierarchy* hierarchy() { return hierarchy_.get(); }
  const SimConfig& config() const { return cfg_; }

 private:
  void handle(const ScenarioEvent& event, std::size_t index,
              ReplayResult& result);

  SimConfig cfg_;
  std::unique_ptr<LlcModel> llc_;
  std::unique_ptr<DomainManager> manager_;
  std::unique_ptr<StatsCollector> stats_;
  std::unique_ptr<Hierarchy> hierarchy_;
};

// Fresh-instance replay of one event sequence.
ReplayResult replay(const SimConfig& cfg, std::span<const ScenarioEvent> events);

// Replays `events` as-is and with `excluded`'s ACCESS events dropped, then
// compares `subject`'s projected outcomes. Registration and chunk
// management events are kept in both runs.
NiVerdict differential_verdict(const SimConfig& cfg,
                               std::span<const ScenarioEvent> events,
                               DomainId subject, DomainId excluded);

}  // namespace ccsim
