#include "ccsim/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>

namespace ccsim {

namespace {

std::string trim(std::string_view sv) {
  const char* ws = " \t\r";
  const auto first = sv.find_first_not_of(ws);
  if (first == std::string_view::npos) return "";
  const auto last = sv.find_last_not_of(ws);
  return std::string(sv.substr(first, last - first + 1));
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  int base = 10;
  std::string_view sv = value;
  if (sv.starts_with("0x") || sv.starts_with("0X")) {
    sv.remove_prefix(2);
    base = 16;
  }
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out, base);
  if (ec != std::errc{} || ptr != sv.data() + sv.size() || sv.empty()) {
    throw SimError(ErrorCode::kConfig,
                   "config key '" + key + "': bad number '" + value + "'");
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view sv = raw;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    const std::string line = trim(sv);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw SimError(ErrorCode::kConfig,
                     "config line " + std::to_string(line_no) +
                         ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw SimError(ErrorCode::kConfig,
                     "config line " + std::to_string(line_no) +
                         ": empty key or value");
    }
    kv[key] = value;
  }
  return kv;
}

SimConfig apply_config(const SimConfig& base,
                       const std::map<std::string, std::string>& kv) {
  SimConfig cfg = base;

  auto geometry_keys = [](CacheGeometry* g, const std::string& prefix,
                          auto& table) {
    table[prefix + ".line_bytes"] = [g](const std::string& k, const std::string& v) {
      g->line_size_bytes = static_cast<std::uint32_t>(to_u64(k, v));
    };
    table[prefix + ".sets"] = [g](const std::string& k, const std::string& v) {
      g->num_sets = static_cast<std::uint32_t>(to_u64(k, v));
    };
    table[prefix + ".ways"] = [g](const std::string& k, const std::string& v) {
      g->ways = static_cast<std::uint32_t>(to_u64(k, v));
    };
  };

  using Handler = std::function<void(const std::string&, const std::string&)>;
  std::map<std::string, Handler> table;
  geometry_keys(&cfg.llc.geometry, "llc", table);
  geometry_keys(&cfg.hierarchy.l1i, "l1i", table);
  geometry_keys(&cfg.hierarchy.l1d, "l1d", table);
  geometry_keys(&cfg.hierarchy.l2, "l2", table);

  table["llc.did_bits"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.llc.geometry.did_bits = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["llc.policy"] = [&cfg](const std::string& k, const std::string& v) {
    if (v == "lru") cfg.llc.geometry.policy = ReplPolicy::kLru;
    else if (v == "random") cfg.llc.geometry.policy = ReplPolicy::kRandom;
    else throw SimError(ErrorCode::kConfig, "config key '" + k + "': want lru|random");
  };
  table["llc.base_cycles"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.llc.base_hit_cycles = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["llc.exclusive_extra_cycles"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.llc.excl_extra_cycles = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["llc.mainstream_extra_cycles"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.llc.mainstream_extra_cycles = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["llc.principal_sets"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.llc.os_principal_sets = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["llc.max_domains"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.llc.max_domains = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["llc.max_sets_per_domain"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.llc.max_sets_per_domain = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["llc.model"] = [&cfg](const std::string& k, const std::string& v) {
    auto kind = llc_kind_from_string(v);
    if (!kind) throw SimError(ErrorCode::kConfig, "config key '" + k + "': want chunked|shared|way");
    cfg.kind = *kind;
  };
  table["hierarchy.l1_cycles"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.hierarchy.l1_hit_cycles = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["hierarchy.l2_cycles"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.hierarchy.l2_hit_cycles = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["hierarchy.memory_cycles"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.hierarchy.memory_latency_cycles = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["hierarchy.cores"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.hierarchy.num_cores = static_cast<std::uint32_t>(to_u64(k, v));
  };
  table["sim.hierarchy"] = [&cfg](const std::string& k, const std::string& v) {
    if (v == "on") cfg.model_hierarchy = true;
    else if (v == "off") cfg.model_hierarchy = false;
    else throw SimError(ErrorCode::kConfig, "config key '" + k + "': want on|off");
  };
  table["sim.seed"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.seed = to_u64(k, v);
  };
  table["sim.default_exclusive_sets"] = [&cfg](const std::string& k, const std::string& v) {
    cfg.default_exclusive_sets = static_cast<std::uint32_t>(to_u64(k, v));
  };

  for (const auto& [key, value] : kv) {
    auto it = table.find(key);
    if (it == table.end()) {
      throw SimError(ErrorCode::kConfig, "unknown config key '" + key + "'");
    }
    it->second(key, value);
  }
  return cfg;
}

SimConfig load_config_file(const std::string& path, const SimConfig& base) {
  std::ifstream in(path);
  if (!in) {
    throw SimError(ErrorCode::kIo, "cannot open config file '" + path + "'");
  }
  return apply_config(base, parse_key_values(in));
}

}  // namespace ccsim
