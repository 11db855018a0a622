#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "ccsim/engine.hpp"

namespace ccsim {

// Key-value experiment manifests: one `key = value` pair per line, `#`
// comments. Unknown keys are rejected so typos cannot silently fall back
// to defaults. See the README for the schema.
std::map<std::string, std::string> parse_key_values(std::istream& in);

// Applies a manifest on top of `base` (typically SimConfig::paper_defaults).
SimConfig apply_config(const SimConfig& base,
                       const std::map<std::string, std::string>& kv);

SimConfig load_config_file(const std::string& path, const SimConfig& base);

}  // namespace ccsim
