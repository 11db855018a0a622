// Command-line front end: replay scenarios against the chunked, shared or
// way-partitioned LLC model, run the side-channel harness, print the
// storage-overhead breakdown, or compare models on one trace.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "ccsim/analysis.hpp"
#include "ccsim/config_file.hpp"
#include "ccsim/engine.hpp"
#include "ccsim/workloads.hpp"

namespace fs = std::filesystem;
using namespace ccsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerdictFail = 2;
constexpr int kExitIo = 3;
constexpr int kExitSim = 4;

struct CommonArgs {
  std::string config_path;
  std::string scenario_path;
  std::string llc = "chunked";
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool with_scenario) {
  cmd->add_option("--config", args->config_path,
                  "key-value configuration file (flags override it)");
  if (with_scenario) {
    cmd->add_option("--scenario", args->scenario_path, "scenario file to replay");
  }
  cmd->add_option("--llc,--llc-model", args->llc,
                  "LLC model: chunked|shared|way")
      ->check(CLI::IsMember({"chunked", "shared", "way"}));
  cmd->add_option("--seed", args->seed, "deterministic seed (default 0xC0FFEE)");
  cmd->add_option("--out", args->out_dir,
                  "output directory (env CCSIM_OUT when omitted)");
}

SimConfig resolve_config(const CommonArgs& args, bool seed_given,
                         bool llc_given) {
  SimConfig cfg = SimConfig::paper_defaults();
  if (!args.config_path.empty()) {
    cfg = load_config_file(args.config_path, cfg);
  }
  if (seed_given || args.config_path.empty()) cfg.seed = args.seed;
  if (llc_given || args.config_path.empty()) {
    cfg.kind = *llc_kind_from_string(args.llc);
  }
  return cfg;
}

fs::path resolve_out_dir(const CommonArgs& args, const std::string& fallback) {
  if (!args.out_dir.empty()) return args.out_dir;
  if (const char* env = std::getenv("CCSIM_OUT")) return env;
  return fallback;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw SimError(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  out << content;
}

std::vector<ScenarioEvent> load_scenario(const std::string& path,
                                         const SimConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    throw SimError(ErrorCode::kIo, "cannot open scenario '" + path + "'");
  }
  ScenarioLimits limits;
  limits.max_cores = cfg.hierarchy.num_cores;
  limits.max_domains = cfg.llc.max_domains;
  return parse_scenario(in, limits);
}

int run_sim(const CommonArgs& args, bool seed_given, bool llc_given) {
  const SimConfig cfg = resolve_config(args, seed_given, llc_given);
  if (args.scenario_path.empty()) {
    std::cerr << "ccsim sim: --scenario is required" << std::endl;
    return kExitUsage;
  }
  const std::vector<ScenarioEvent> events = load_scenario(args.scenario_path, cfg);
  Simulation sim(cfg);
  const ReplayResult result = sim.run(events);

  const fs::path out_dir = resolve_out_dir(args, "ccsim-out");
  fs::create_directories(out_dir);
  write_file(out_dir / "report.csv", emit_report(result.stats));
  std::ostringstream state;
  sim.llc().dump(state);
  write_file(out_dir / "llc_state.txt", state.str());

  std::cout << "replayed " << result.outcomes.size() << " accesses on "
            << to_string(cfg.kind) << " llc; report in "
            << (out_dir / "report.csv").string() << std::endl;
  return kExitOk;
}

// Registration prelude shared by both attack kinds: victim and attacker in
// exclusive mode, no shared regions, pinned to different cores.
std::vector<ScenarioEvent> attack_prelude(const SimConfig& cfg) {
  std::vector<ScenarioEvent> events;
  RegisterEvent victim;
  victim.did = 1;
  victim.mode = IsolationMode::kExclusive;
  victim.sets = cfg.default_exclusive_sets;
  events.emplace_back(victim);
  RegisterEvent attacker;
  attacker.did = 2;
  attacker.mode = IsolationMode::kExclusive;
  attacker.sets = cfg.default_exclusive_sets;
  events.emplace_back(attacker);
  events.emplace_back(SwitchEvent{0, 1});
  events.emplace_back(SwitchEvent{1, 2});
  return events;
}

int run_attack(const CommonArgs& args, const std::string& kind,
               bool seed_given, bool llc_given) {
  SimConfig cfg = resolve_config(args, seed_given, llc_given);
  cfg.model_hierarchy = false;  // the projection is over LLC outcomes

  std::vector<ScenarioEvent> events = attack_prelude(cfg);
  const CacheGeometry& g = cfg.llc.geometry;
  if (kind == "prime-probe") {
    PrimeProbeSpec spec;
    spec.attacker = 2;
    spec.victim = 1;
    spec.attacker_core = 1;
    spec.victim_core = 0;
    spec.index_bits = g.index_bits();
    spec.ways = g.ways;
    spec.line_size_bytes = g.line_size_bytes;
    spec.target_index = static_cast<std::uint32_t>(cfg.seed % g.num_sets);
    auto body = build_prime_probe(spec);
    events.insert(events.end(), body.begin(), body.end());
  } else {
    // Column-concentrated footprints create eviction pressure even on a
    // large LLC while still fitting inside the attacker's own chunk.
    const std::uint32_t window =
        std::min<std::uint32_t>(64, cfg.default_exclusive_sets);
    OccupancySpec spec;
    spec.attacker = 2;
    spec.attacker_core = 1;
    spec.victim_did = 1;
    spec.victim_core = 0;
    spec.attacker_walk.kind = WorkloadKind::kConflict;
    spec.attacker_walk.conflict_lines = g.ways;
    spec.attacker_walk.conflict_columns = window;
    spec.attacker_walk.conflict_index_bits = g.index_bits();
    spec.attacker_walk.length = static_cast<std::uint64_t>(window) * g.ways;
    spec.attacker_walk.line_size_bytes = g.line_size_bytes;
    spec.victim = spec.attacker_walk;
    spec.victim.base_line = static_cast<std::uint64_t>(g.ways + 1)
                            << g.index_bits();
    auto body = build_occupancy_probe(spec);
    events.insert(events.end(), body.begin(), body.end());
  }

  const NiVerdict verdict = differential_verdict(cfg, events, 2, 1);
  std::cout << "attack=" << kind << " llc=" << to_string(cfg.kind)
            << " verdict=" << (verdict.pass ? "PASS" : "FAIL");
  if (!verdict.pass) {
    std::cout << " divergence_index=" << verdict.divergence_index << " ("
              << verdict.detail << ")";
  }
  std::cout << std::endl;

  if (!args.out_dir.empty() || std::getenv("CCSIM_OUT")) {
    const fs::path out_dir = resolve_out_dir(args, "ccsim-out");
    fs::create_directories(out_dir);
    std::ostringstream os;
    os << "kind=" << kind << "\nllc=" << to_string(cfg.kind)
       << "\nverdict=" << (verdict.pass ? "PASS" : "FAIL") << "\n";
    if (!verdict.pass) {
      os << "divergence_index=" << verdict.divergence_index << "\ndetail="
         << verdict.detail << "\n";
    }
    write_file(out_dir / "verdict.txt", os.str());
  }
  return verdict.pass ? kExitOk : kExitVerdictFail;
}

int run_overhead(const CommonArgs& args, bool paper_config,
                 std::uint32_t domains) {
  SimConfig cfg = SimConfig::paper_defaults();
  if (!paper_config && !args.config_path.empty()) {
    cfg = load_config_file(args.config_path, cfg);
  }
  if (domains != 0) {
    cfg.llc.max_domains = domains;
    // One DID tag bit per doubling of the domain count.
    std::uint32_t bits = 1;
    while ((1u << bits) < domains) ++bits;
    cfg.llc.geometry.did_bits = bits;
  }
  const OverheadBreakdown b = storage_overhead(cfg.llc);
  std::cout << "configuration: " << cfg.llc.geometry.num_sets << " sets x "
            << cfg.llc.geometry.ways << " ways x "
            << cfg.llc.geometry.line_size_bytes << " B lines ("
            << cfg.llc.geometry.capacity_bytes() / (1024 * 1024)
            << " MB), " << cfg.llc.max_domains << " domains, "
            << cfg.llc.max_sets_per_domain << " max sets/domain\n";
  std::cout << emit_overhead_csv(b);
  if (cfg.llc.max_domains >= 32) {
    // The extra DID bit is charged across every line of the tag store:
    // num_sets * ways extra bits, not a per-table constant.
    const std::uint64_t delta_bits = static_cast<std::uint64_t>(
        cfg.llc.geometry.num_sets) * cfg.llc.geometry.ways;
    char kb[32];
    std::snprintf(kb, sizeof(kb), "%.2f", OverheadBreakdown::kb(delta_bits));
    std::cout << "# note: each extra did bit adds " << delta_bits
              << " tag bits (" << kb << " KB); per-line accounting, "
              << "not the 0.25 KB sometimes quoted\n";
  }
  if (!args.out_dir.empty() || std::getenv("CCSIM_OUT")) {
    const fs::path out_dir = resolve_out_dir(args, "ccsim-out");
    fs::create_directories(out_dir);
    write_file(out_dir / "overhead.csv", emit_overhead_csv(b));
  }
  return kExitOk;
}

int run_compare(const CommonArgs& args, const std::string& models_csv,
                bool seed_given) {
  const SimConfig base = resolve_config(args, seed_given, false);
  if (args.scenario_path.empty()) {
    std::cerr << "ccsim compare: --scenario is required" << std::endl;
    return kExitUsage;
  }
  std::vector<LlcKind> kinds;
  {
    std::istringstream in(models_csv);
    std::string name;
    while (std::getline(in, name, ',')) {
      auto kind = llc_kind_from_string(name);
      if (!kind) {
        std::cerr << "ccsim compare: unknown model '" << name << "'" << std::endl;
        return kExitUsage;
      }
      kinds.push_back(*kind);
    }
  }
  const std::vector<ScenarioEvent> events = load_scenario(args.scenario_path, base);

  // Independent instances per model; merged in the fixed request order.
  std::vector<std::future<ReplayResult>> futures;
  for (LlcKind kind : kinds) {
    SimConfig cfg = base;
    cfg.kind = kind;
    futures.push_back(std::async(std::launch::async, [cfg, &events]() {
      return replay(cfg, events);
    }));
  }

  std::ostringstream table;
  table << "model,domain,llc_accesses,llc_misses,llc_miss_rate,amat\n";
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const ReplayResult result = futures[i].get();
    for (DomainId did : result.stats.domains()) {
      const DomainStats& d = result.stats.domain(did);
      char rate[32], amat[32];
      std::snprintf(rate, sizeof(rate), "%.6f", d.llc.miss_rate());
      std::snprintf(amat, sizeof(amat), "%.4f",
                    d.accesses ? result.stats.amat(did) : 0.0);
      table << to_string(kinds[i]) << ',' << did << ',' << d.llc.accesses
            << ',' << d.llc.misses << ',' << rate << ',' << amat << '\n';
    }
  }
  std::cout << table.str();
  if (!args.out_dir.empty() || std::getenv("CCSIM_OUT")) {
    const fs::path out_dir = resolve_out_dir(args, "ccsim-out");
    fs::create_directories(out_dir);
    write_file(out_dir / "compare.csv", table.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chunked-cache LLC simulator"};
  app.require_subcommand(1);

  CommonArgs sim_args, attack_args, overhead_args, compare_args;
  std::string attack_kind = "prime-probe";
  bool paper_config = false;
  std::uint32_t overhead_domains = 0;
  std::string compare_models = "chunked,shared,way";

  CLI::App* sim = app.add_subcommand("sim", "replay a scenario, write reports");
  add_common(sim, &sim_args, true);

  CLI::App* attack =
      app.add_subcommand("attack", "build and replay an attack scenario");
  add_common(attack, &attack_args, false);
  attack->add_option("--kind", attack_kind, "prime-probe|occupancy")
      ->check(CLI::IsMember({"prime-probe", "occupancy"}));

  CLI::App* overhead =
      app.add_subcommand("overhead", "print the storage-overhead breakdown");
  add_common(overhead, &overhead_args, false);
  overhead->add_flag("--paper-config", paper_config,
                     "use the reference 16 MB / 16-domain configuration");
  overhead->add_option("--domains", overhead_domains,
                       "override the parallel-domain count (adjusts did bits)");

  CLI::App* compare =
      app.add_subcommand("compare", "run one trace across LLC models");
  add_common(compare, &compare_args, true);
  compare->add_option("--models", compare_models,
                      "comma-separated subset of chunked,shared,way");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      return run_sim(sim_args, sim->count("--seed") > 0, sim->count("--llc") > 0);
    }
    if (attack->parsed()) {
      return run_attack(attack_args, attack_kind,
                        attack->count("--seed") > 0, attack->count("--llc") > 0);
    }
    if (overhead->parsed()) {
      return run_overhead(overhead_args, paper_config, overhead_domains);
    }
    if (compare->parsed()) {
      return run_compare(compare_args, compare_models,
                         compare->count("--seed") > 0);
    }
  } catch (const ParseError& e) {
    std::cerr << "ccsim: scenario " << e.what() << std::endl;
    return kExitUsage;
  } catch (const SimError& e) {
    std::cerr << "ccsim: " << e.what() << std::endl;
    switch (e.code()) {
      case ErrorCode::kIo: return kExitIo;
      case ErrorCode::kUsage:
      case ErrorCode::kConfig: return kExitUsage;
      default: return kExitSim;
    }
  } catch (const std::exception& e) {
    std::cerr << "ccsim: " << e.what() << std::endl;
    return kExitSim;
  }
  return kExitUsage;
}
