#include <charconv>
#include <fmt/format.h>
#include <sstream>

#include "dynplanar/harness.hpp"
#include "json.hpp"

namespace dp::harness {

namespace {

struct Shape {
  std::string_view token;
  Item::Kind kind;
  std::size_t arity;
};

constexpr Shape kShapes[] = {
    {"+", Item::Kind::insert, 2}, {"-", Item::Kind::remove, 2}, {"?", Item::Kind::components, 2},
    {"?c", Item::Kind::iso1, 2},  {"?b", Item::Kind::iso2, 4},  {"?t", Item::Kind::iso3, 8},
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long parse_int(std::string_view tok, int line) {
  long v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw ParseError(fmt::format("line {}: '{}' is not an integer", line, tok), line);
  return v;
}

bool distinct3(const std::vector<Vertex>& v, std::size_t at) {
  return v[at] != v[at + 1] && v[at] != v[at + 2] && v[at + 1] != v[at + 2];
}

}  // namespace

std::string_view kind_name(Item::Kind k) {
  for (const auto& s : kShapes)
    if (s.kind == k) return s.token;
  return "?";
}

std::size_t Script::event_count() const {
  std::size_t c = 0;
  for (const auto& it : items) c += it.is_change();
  return c;
}

std::size_t Script::query_count() const { return items.size() - event_count(); }

Script parse_script(std::string_view text) {
  Script s;
  bool have_n = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split(line);
    if (toks.empty()) continue;

    if (toks[0] == "n") {
      if (have_n) throw ParseError(fmt::format("line {}: repeated header", line_no), line_no);
      if (toks.size() != 2) throw ParseError(fmt::format("line {}: header is 'n <int>'", line_no), line_no);
      long n = parse_int(toks[1], line_no);
      if (n < 1 || n > 1'000'000) throw RangeError(fmt::format("line {}: bad vertex count {}", line_no, n), line_no);
      s.n = static_cast<int>(n);
      have_n = true;
      continue;
    }
    if (!have_n) throw ParseError(fmt::format("line {}: script must start with 'n <int>'", line_no), line_no);

    const Shape* shape = nullptr;
    for (const auto& sh : kShapes)
      if (toks[0] == sh.token) shape = &sh;
    if (!shape) throw ParseError(fmt::format("line {}: unknown item '{}'", line_no, toks[0]), line_no);
    if (toks.size() != shape->arity + 1)
      throw ParseError(fmt::format("line {}: '{}' takes {} vertices", line_no, shape->token, shape->arity), line_no);

    Item item{shape->kind, line_no, {}};
    for (std::size_t i = 1; i < toks.size(); ++i) {
      long v = parse_int(toks[i], line_no);
      if (v < 0 || v >= s.n)
        throw RangeError(fmt::format("line {}: vertex {} outside [0, {})", line_no, v, s.n), line_no);
      item.args.push_back(static_cast<Vertex>(v));
    }
    if (item.is_change() && item.args[0] == item.args[1])
      throw ParseError(fmt::format("line {}: self-loop", line_no), line_no);
    if (item.kind == Item::Kind::iso3 && (!distinct3(item.args, 0) || !distinct3(item.args, 4)))
      throw ParseError(fmt::format("line {}: a, b, c must be distinct on both sides", line_no), line_no);
    s.items.push_back(std::move(item));
  }
  if (!have_n) throw ParseError("empty script", line_no);
  return s;
}

std::string format_script(const Script& s) {
  std::string out = fmt::format("n {}\n", s.n);
  for (const auto& it : s.items) {
    out += kind_name(it.kind);
    for (Vertex v : it.args) out += fmt::format(" {}", v);
    out += '\n';
  }
  return out;
}

std::string Report::to_json() const {
  nlohmann::json trace_json = nlohmann::json::array();
  for (const auto& t : trace) {
    nlohmann::json j;
    j["line"] = t.line;
    j["kind"] = t.kind;
    j["answer"] = t.answer ? nlohmann::json(*t.answer) : nlohmann::json(nullptr);
    j["change_type"] = t.change_type.empty() ? nlohmann::json(nullptr) : nlohmann::json(t.change_type);
    j["drops"] = t.drops;
    j["refreshes"] = t.refreshes;
    if (!t.note.empty()) j["note"] = t.note;
    if (t.witness) {
      nlohmann::json w = nlohmann::json::array();
      for (auto [x, y] : t.witness->pairs) w.push_back({x, y});
      j["witness"] = w;
    }
    trace_json.push_back(std::move(j));
  }
  nlohmann::json doc;
  doc["trace"] = std::move(trace_json);
  doc["aborted"] = aborted;
  if (aborted) {
    doc["abort_line"] = abort_line;
    doc["abort_reason"] = abort_reason;
  }
  doc["diffs"] = diffs;
  return doc.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& t : trace) {
    out += fmt::format("{:>5} {:<3}", t.line, t.kind);
    if (t.answer) out += *t.answer ? " YES" : " NO";
    if (!t.change_type.empty()) out += " " + t.change_type;
    if (!t.note.empty()) out += " (" + t.note + ")";
    if (t.witness) {
      out += " [";
      for (std::size_t i = 0; i < t.witness->pairs.size(); ++i)
        out += fmt::format("{}{}->{}", i ? " " : "", t.witness->pairs[i].first, t.witness->pairs[i].second);
      out += "]";
    }
    out += fmt::format("  drops={} refreshes={}\n", t.drops, t.refreshes);
  }
  if (aborted) out += fmt::format("aborted at line {}: {}\n", abort_line, abort_reason);
  for (const auto& d : diffs) out += "diff: " + d + "\n";
  return out;
}

}  // namespace dp::harness
