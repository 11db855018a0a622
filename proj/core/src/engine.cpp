#include "ccsim/engine.hpp"

#include <algorithm>

namespace ccsim {

SimConfig SimConfig::paper_defaults() {
  SimConfig cfg;
  cfg.llc.geometry = CacheGeometry{64, 16384, 16, 4};
  cfg.llc.max_domains = 16;
  cfg.llc.max_sets_per_domain = 8192;
  cfg.llc.os_principal_sets = 8192;
  return cfg;
}

std::unique_ptr<LlcModel> make_llc(const SimConfig& cfg) {
  ControllerConfig llc = cfg.llc;
  llc.geometry.seed = cfg.seed;
  switch (cfg.kind) {
    case LlcKind::kChunked: return std::make_unique<ChunkedLlc>(llc);
    case LlcKind::kShared: return std::make_unique<SharedLlc>(llc);
    case LlcKind::kWayPartitioned: return std::make_unique<WayPartLlc>(llc);
  }
  throw SimError(ErrorCode::kConfig, "unknown llc kind");
}

std::vector<ProjectedOutcome> ReplayResult::project(DomainId subject) const {
  std::vector<ProjectedOutcome> out;
  for (const LogRecord& r : outcomes) {
    if (r.req.did != subject) continue;
    out.push_back({r.out.hit, r.out.sid, r.out.cycles});
  }
  return out;
}

std::pair<std::size_t, std::size_t> ReplayResult::phase(
    const std::string& label) const {
  for (std::size_t i = 0; i < barriers.size(); ++i) {
    if (barriers[i].second == label) {
      const std::size_t first = barriers[i].first;
      const std::size_t last =
          i + 1 < barriers.size() ? barriers[i + 1].first : outcomes.size();
      return {first, last};
    }
  }
  throw SimError(ErrorCode::kConfig, "no barrier labeled '" + label + "'");
}

Simulation::Simulation(const SimConfig& cfg) : cfg_(cfg) {
  cfg_.llc.validate();
  llc_ = make_llc(cfg_);
  stats_ = std::make_unique<StatsCollector>();
  manager_ = std::make_unique<DomainManager>(
      *llc_, cfg_.llc.max_domains, cfg_.llc.geometry.line_size_bytes,
      cfg_.default_exclusive_sets);
  if (cfg_.model_hierarchy) {
    hierarchy_ = std::make_unique<Hierarchy>(
        cfg_.hierarchy, *llc_, *stats_,
        [this](DomainId did, std::uint64_t addr) {
          return manager_->classify(did, addr).shared;
        });
  }
  // Every line leaving the LLC is accounted here once and, with a
  // hierarchy in place, scrubbed from the private levels it could back.
  llc_->array().set_line_hook([this](const CacheLine& line) {
    if (line.dirty) stats_->record_writeback(line.did, Level::kLlc);
    if (hierarchy_) hierarchy_->back_invalidate(line);
  });
}

Simulation::~Simulation() { llc_->array().set_line_hook(nullptr); }

void Simulation::handle(const ScenarioEvent& event, std::size_t index,
                        ReplayResult& result) {
  if (const auto* e = std::get_if<AccessEvent>(&event)) {
    const RequestMeta meta = manager_->classify(e->did, e->address);
    AccessRequest req;
    req.core = e->core;
    req.did = meta.did;
    req.op = e->op;
    req.address = e->address;
    req.shared = meta.shared;

    AccessOutcome out;
    if (hierarchy_) {
      out = hierarchy_->memory_access(e->core, req);
    } else {
      out = llc_->access(req);
      stats_->record_level_access(req.did, Level::kLlc, op_class(req.op),
                                  out.hit, out.permission_miss);
      stats_->record_request(req.did, out.cycles);
    }
    if (out.llc_probed && out.victim.valid) {
      stats_->record_eviction(req.did, out.victim.did);
    }
    result.outcomes.push_back({index, req, out});
    return;
  }
  if (const auto* e = std::get_if<RegisterEvent>(&event)) {
    DomainConfig cfg;
    cfg.did = e->did;
    cfg.mode = e->mode;
    cfg.requested_sets = e->sets;
    cfg.shared_regions = e->regions;
    if (auto receipt = manager_->register_domain(cfg)) {
      stats_->record_mgmt(e->did, receipt->cycles);
      result.mgmt_cycles += receipt->cycles;
    }
    return;
  }
  if (const auto* e = std::get_if<AllocEvent>(&event)) {
    AllocReceipt receipt = manager_->allocate(e->did, e->ch_num);
    stats_->record_mgmt(e->did, receipt.cycles);
    result.mgmt_cycles += receipt.cycles;
    return;
  }
  if (const auto* e = std::get_if<DeallocEvent>(&event)) {
    DeallocResult freed = manager_->deallocate(e->did);
    stats_->record_mgmt(e->did, freed.cycles);
    result.mgmt_cycles += freed.cycles;
    return;
  }
  if (const auto* e = std::get_if<ResizeEvent>(&event)) {
    AllocReceipt receipt = manager_->resize(e->did, e->ch_num);
    stats_->record_mgmt(e->did, receipt.cycles);
    result.mgmt_cycles += receipt.cycles;
    return;
  }
  if (const auto* e = std::get_if<SwitchEvent>(&event)) {
    if (!manager_->is_registered(e->did)) {
      throw SimError(ErrorCode::kUnregisteredDomain,
                     "SWITCH to unregistered domain");
    }
    if (hierarchy_) hierarchy_->context_switch(e->core, e->did);
    return;
  }
  if (const auto* e = std::get_if<BarrierEvent>(&event)) {
    result.barriers.emplace_back(result.outcomes.size(), e->label);
    return;
  }
}

ReplayResult Simulation::run(std::span<const ScenarioEvent> events) {
  ReplayResult result;
  for (std::size_t i = 0; i < events.size(); ++i) {
    handle(events[i], i, result);
  }
  result.stats = *stats_;
  return result;
}

ReplayResult replay(const SimConfig& cfg, std::span<const ScenarioEvent> events) {
  Simulation sim(cfg);
  return sim.run(events);
}

NiVerdict differential_verdict(const SimConfig& cfg,
                               std::span<const ScenarioEvent> events,
                               DomainId subject, DomainId excluded) {
  std::vector<ScenarioEvent> filtered;
  filtered.reserve(events.size());
  for (const ScenarioEvent& e : events) {
    if (const auto* a = std::get_if<AccessEvent>(&e); a && a->did == excluded) {
      continue;
    }
    filtered.push_back(e);
  }
  const ReplayResult with = replay(cfg, events);
  const ReplayResult without = replay(cfg, filtered);
  const auto proj_with = with.project(subject);
  const auto proj_without = without.project(subject);
  return noninterference_verdict(proj_with, proj_without);
}

}  // namespace ccsim
