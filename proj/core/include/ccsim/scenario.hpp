#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ccsim/domain_manager.hpp"
#include "ccsim/types.hpp"

namespace ccsim {

struct AccessEvent {
  std::uint32_t core = 0;
  DomainId did = 0;
  MemOp op = MemOp::kRead;
  std::uint64_t address = 0;
  friend bool operator==(const AccessEvent&, const AccessEvent&) = default;
};

struct AllocEvent {
  DomainId did = 0;
  std::uint32_t ch_num = 0;
  friend bool operator==(const AllocEvent&, const AllocEvent&) = default;
};

struct DeallocEvent {
  DomainId did = 0;
  friend bool operator==(const DeallocEvent&, const DeallocEvent&) = default;
};

struct ResizeEvent {
  DomainId did = 0;
  std::uint32_t ch_num = 0;
  friend bool operator==(const ResizeEvent&, const ResizeEvent&) = default;
};

struct RegisterEvent {
  DomainId did = 0;
  IsolationMode mode = IsolationMode::kExclusive;
  std::optional<std::uint32_t> sets;
  std::vector<AddressRange> regions;
  friend bool operator==(const RegisterEvent&, const RegisterEvent&) = default;
};

struct SwitchEvent {
  std::uint32_t core = 0;
  DomainId did = 0;
  friend bool operator==(const SwitchEvent&, const SwitchEvent&) = default;
};

struct BarrierEvent {
  std::string label;
  friend bool operator==(const BarrierEvent&, const BarrierEvent&) = default;
};

using ScenarioEvent = std::variant<AccessEvent, AllocEvent, DeallocEvent,
                                   ResizeEvent, RegisterEvent, SwitchEvent,
                                   BarrierEvent>;

struct ScenarioLimits {
  std::uint64_t max_address = 1ull << 48;
  std::uint32_t max_cores = 64;
  std::uint32_t max_domains = 32;
};

class ParseError : public SimError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : SimError(ErrorCode::kConfig,
                 "line " + std::to_string(line) + ", col " +
                     std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Line-oriented text scenarios; `#` starts a comment, one directive per
// line, addresses in hex:
//   ACCESS <core> <did> <R|W|IF> <addr>
//   ALLOC <did> <ch_num>
//   DEALLOC <did>
//   RESIZE <did> <ch_num>
//   REGISTER <did> <EXCLUSIVE|MAINSTREAM> [sets=<n>] [share=<addr>:<addr>]...
//   SWITCH <core> <did>
//   BARRIER <label>
std::vector<ScenarioEvent> parse_scenario(std::istream& in,
                                          const ScenarioLimits& limits = {});
std::vector<ScenarioEvent> parse_scenario(const std::string& text,
                                          const ScenarioLimits& limits = {});

void serialize_scenario(std::span<const ScenarioEvent> events,
                        std::ostream& out);
std::string serialize_scenario(std::span<const ScenarioEvent> events);

}  // namespace ccsim
