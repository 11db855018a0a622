#include "ccsim/scenario.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace ccsim {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t line_no;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  std::size_t column() const { return pos + 1; }

  std::string_view token() {
    skip_ws();
    if (pos >= text.size()) {
      throw ParseError(line_no, column(), "unexpected end of line");
    }
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    return text.substr(start, pos - start);
  }
};

std::uint64_t parse_uint(Cursor& c, std::string_view what, int base) {
  c.skip_ws();
  const std::size_t col = c.column();
  std::string_view tok = c.token();
  if (base == 16 && (tok.starts_with("0x") || tok.starts_with("0X"))) {
    tok.remove_prefix(2);
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value, base);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw ParseError(c.line_no, col,
                     "malformed " + std::string(what) + " '" + std::string(tok) + "'");
  }
  return value;
}

DomainId parse_did(Cursor& c, const ScenarioLimits& limits) {
  const std::size_t col = c.column();
  const std::uint64_t did = parse_uint(c, "domain id", 10);
  if (did >= limits.max_domains) {
    throw ParseError(c.line_no, col, "domain id out of range");
  }
  return static_cast<DomainId>(did);
}

std::uint32_t parse_core(Cursor& c, const ScenarioLimits& limits) {
  const std::size_t col = c.column();
  const std::uint64_t core = parse_uint(c, "core id", 10);
  if (core >= limits.max_cores) {
    throw ParseError(c.line_no, col, "core id out of range");
  }
  return static_cast<std::uint32_t>(core);
}

std::uint64_t parse_addr(Cursor& c, const ScenarioLimits& limits) {
  const std::size_t col = c.column();
  const std::uint64_t addr = parse_uint(c, "address", 16);
  if (addr >= limits.max_address) {
    throw ParseError(c.line_no, col, "address out of range");
  }
  return addr;
}

std::uint64_t parse_hex_field(std::string_view field, Cursor& c,
                              std::size_t col) {
  if (field.starts_with("0x") || field.starts_with("0X")) field.remove_prefix(2);
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value, 16);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(c.line_no, col, "malformed address");
  }
  return value;
}

}  // namespace

std::vector<ScenarioEvent> parse_scenario(std::istream& in,
                                          const ScenarioLimits& limits) {
  std::vector<ScenarioEvent> events;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view sv = raw;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    Cursor c{sv, line_no};
    if (c.done()) continue;
    const std::size_t dir_col = c.column();
    const std::string_view dir = c.token();

    if (dir == "ACCESS") {
      AccessEvent e;
      e.core = parse_core(c, limits);
      e.did = parse_did(c, limits);
      const std::size_t op_col = c.column();
      const std::string_view op = c.token();
      if (op == "R") e.op = MemOp::kRead;
      else if (op == "W") e.op = MemOp::kWrite;
      else if (op == "IF") e.op = MemOp::kIfetch;
      else throw ParseError(line_no, op_col, "bad op (want R, W or IF)");
      e.address = parse_addr(c, limits);
      events.emplace_back(e);
    } else if (dir == "ALLOC") {
      AllocEvent e;
      e.did = parse_did(c, limits);
      e.ch_num = static_cast<std::uint32_t>(parse_uint(c, "set count", 10));
      events.emplace_back(e);
    } else if (dir == "DEALLOC") {
      DeallocEvent e;
      e.did = parse_did(c, limits);
      events.emplace_back(e);
    } else if (dir == "RESIZE") {
      ResizeEvent e;
      e.did = parse_did(c, limits);
      e.ch_num = static_cast<std::uint32_t>(parse_uint(c, "set count", 10));
      events.emplace_back(e);
    } else if (dir == "REGISTER") {
      RegisterEvent e;
      e.did = parse_did(c, limits);
      const std::size_t mode_col = c.column();
      const std::string_view mode = c.token();
      if (mode == "EXCLUSIVE") e.mode = IsolationMode::kExclusive;
      else if (mode == "MAINSTREAM") e.mode = IsolationMode::kMainstream;
      else throw ParseError(line_no, mode_col, "bad mode");
      while (!c.done()) {
        const std::size_t opt_col = c.column();
        const std::string_view opt = c.token();
        if (opt.starts_with("sets=")) {
          std::string_view v = opt.substr(5);
          std::uint32_t sets = 0;
          auto [ptr, ec] =
              std::from_chars(v.data(), v.data() + v.size(), sets, 10);
          if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
            throw ParseError(line_no, opt_col, "malformed sets=");
          }
          e.sets = sets;
        } else if (opt.starts_with("share=")) {
          const std::string_view v = opt.substr(6);
          const std::size_t colon = v.find(':');
          if (colon == std::string_view::npos) {
            throw ParseError(line_no, opt_col, "share= wants start:end");
          }
          AddressRange r;
          r.begin = parse_hex_field(v.substr(0, colon), c, opt_col);
          r.end = parse_hex_field(v.substr(colon + 1), c, opt_col);
          if (r.end > limits.max_address || r.begin >= r.end) {
            throw ParseError(line_no, opt_col, "share= range invalid");
          }
          e.regions.push_back(r);
        } else {
          throw ParseError(line_no, opt_col, "unknown REGISTER option");
        }
      }
      events.emplace_back(std::move(e));
    } else if (dir == "SWITCH") {
      SwitchEvent e;
      e.core = parse_core(c, limits);
      e.did = parse_did(c, limits);
      events.emplace_back(e);
    } else if (dir == "BARRIER") {
      BarrierEvent e;
      e.label = std::string(c.token());
      events.emplace_back(std::move(e));
    } else {
      throw ParseError(line_no, dir_col,
                       "unknown directive '" + std::string(dir) + "'");
    }
    if (!c.done()) {
      throw ParseError(line_no, c.column(), "trailing junk");
    }
  }
  return events;
}

std::vector<ScenarioEvent> parse_scenario(const std::string& text,
                                          const ScenarioLimits& limits) {
  std::istringstream in(text);
  return parse_scenario(in, limits);
}

namespace {

struct Serializer {
  std::ostream& out;

  void operator()(const AccessEvent& e) const {
    const char* op = e.op == MemOp::kRead ? "R"
                     : e.op == MemOp::kWrite ? "W"
                                             : "IF";
    out << "ACCESS " << e.core << ' ' << e.did << ' ' << op << " 0x" << std::hex
        << e.address << std::dec << '\n';
  }
  void operator()(const AllocEvent& e) const {
    out << "ALLOC " << e.did << ' ' << e.ch_num << '\n';
  }
  void operator()(const DeallocEvent& e) const {
    out << "DEALLOC " << e.did << '\n';
  }
  void operator()(const ResizeEvent& e) const {
    out << "RESIZE " << e.did << ' ' << e.ch_num << '\n';
  }
  void operator()(const RegisterEvent& e) const {
    out << "REGISTER " << e.did << ' '
        << (e.mode == IsolationMode::kExclusive ? "EXCLUSIVE" : "MAINSTREAM");
    if (e.sets) out << " sets=" << *e.sets;
    for (const AddressRange& r : e.regions) {
      out << " share=0x" << std::hex << r.begin << ":0x" << r.end << std::dec;
    }
    out << '\n';
  }
  void operator()(const SwitchEvent& e) const {
    out << "SWITCH " << e.core << ' ' << e.did << '\n';
  }
  void operator()(const BarrierEvent& e) const {
    out << "BARRIER " << e.label << '\n';
  }
};

}  // namespace

void serialize_scenario(std::span<const ScenarioEvent> events,
                        std::ostream& out) {
  Serializer s{out};
  for (const ScenarioEvent& e : events) std::visit(s, e);
}

std::string serialize_scenario(std::span<const ScenarioEvent> events) {
  std::ostringstream out;
  serialize_scenario(events, out);
  return out.str();
}

}  // namespace ccsim
