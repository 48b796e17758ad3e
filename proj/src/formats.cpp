#include "rplan/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace rplan {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

long long parse_integer(const Line& line, const std::string& token) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw SyntaxError(line.number, "expected an integer, got '" + token + "'");
  }
  return value;
}

void expect_arity(const Line& line, std::size_t arity) {
  if (line.tokens.size() != arity + 1) {
    throw SyntaxError(line.number, "'" + line.tokens[0] + "' takes " + std::to_string(arity) +
                                       (arity == 1 ? " argument" : " arguments"));
  }
}

template <typename T>
void set_once(std::optional<T>& slot, T value, const Line& line) {
  if (slot) throw SyntaxError(line.number, "duplicate '" + line.tokens[0] + "'");
  slot = std::move(value);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  RawInstance raw;
  std::vector<std::string> declared;
  for (const Line& line : tokenize(text)) {
    const std::string& key = line.tokens[0];
    if (key == "assets") {
      expect_arity(line, 1);
      set_once(raw.assets, parse_integer(line, line.tokens[1]), line);
    } else if (key == "goal") {
      expect_arity(line, 1);
      set_once(raw.goal, parse_integer(line, line.tokens[1]), line);
    } else if (key == "start") {
      expect_arity(line, 1);
      set_once(raw.start, line.tokens[1], line);
    } else if (key == "target") {
      expect_arity(line, 1);
      set_once(raw.target, line.tokens[1], line);
    } else if (key == "trap") {
      expect_arity(line, 2);
      raw.traps.emplace_back(line.tokens[1], parse_integer(line, line.tokens[2]));
    } else if (key == "edge") {
      expect_arity(line, 2);
      raw.edges.emplace_back(line.tokens[1], line.tokens[2]);
    } else if (key == "vertex") {
      expect_arity(line, 1);
      declared.push_back(line.tokens[1]);
    } else {
      throw SyntaxError(line.number, "unknown directive '" + key + "'");
    }
  }
  raw.vertices = std::move(declared);
  return build_instance(raw);
}

std::string serialize_instance(const Instance& instance) {
  const Topology& g = instance.topology();
  std::ostringstream out;
  out << "assets " << instance.assets() << '\n';
  out << "goal " << instance.goal() << '\n';
  out << "start " << g.name(g.start()) << '\n';
  out << "target " << g.name(g.target()) << '\n';
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto id = static_cast<VertexId>(v);
    if (g.degree(id) == 0 && !g.is_terminal(id) && !instance.traps().is_trap(id))
      out << "vertex " << g.name(id) << '\n';
  }
  for (VertexId r : instance.traps().traps())
    out << "trap " << g.name(r) << ' ' << instance.traps().reload(r) << '\n';
  for (auto [u, w] : g.edges()) out << "edge " << g.name(u) << ' ' << g.name(w) << '\n';
  return out.str();
}

Plan parse_plan(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw SyntaxError(1, "empty plan");
  const Line& head = lines.front();
  if (head.tokens[0] != "plan") throw SyntaxError(head.number, "expected 'plan <m> <L>'");
  expect_arity(head, 2);
  const long long m = parse_integer(head, head.tokens[1]);
  const long long length = parse_integer(head, head.tokens[2]);
  if (m < 1) throw SyntaxError(head.number, "a plan needs at least one asset");
  if (length < 1) throw SyntaxError(head.number, "a plan needs at least one round");
  if (lines.size() - 1 != static_cast<std::size_t>(m)) {
    const std::size_t where = lines.size() > 1 ? lines.back().number : head.number;
    throw SyntaxError(where, "expected " + std::to_string(m) + " rows, found " +
                                 std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<Location>> rows(m);
  std::vector<char> seen(m, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] != "row") throw SyntaxError(line.number, "expected 'row'");
    if (line.tokens.size() < 2) throw SyntaxError(line.number, "row without an index");
    const long long index = parse_integer(line, line.tokens[1]);
    if (index < 0 || index >= m) throw SyntaxError(line.number, "row index out of range");
    if (seen[index]) throw SyntaxError(line.number, "duplicate row " + std::to_string(index));
    seen[index] = 1;
    if (line.tokens.size() - 2 != static_cast<std::size_t>(length + 1)) {
      throw SyntaxError(line.number, "row " + std::to_string(index) + " has " +
                                         std::to_string(line.tokens.size() - 2) +
                                         " locations, expected " + std::to_string(length + 1));
    }
    for (std::size_t k = 2; k < line.tokens.size(); ++k) {
      const std::string& tok = line.tokens[k];
      rows[index].push_back(tok == kDeadToken ? Location::dead() : Location(tok));
    }
  }
  return Plan(std::move(rows));
}

std::string serialize_plan(const Plan& plan) {
  std::ostringstream out;
  out << "plan " << plan.asset_count() << ' ' << plan.length() << '\n';
  for (std::size_t a = 0; a < plan.asset_count(); ++a) {
    out << "row " << a;
    for (const auto& loc : plan.rows()[a]) out << ' ' << loc.token();
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

Instance load_instance(const std::string& path) { return parse_instance(read_text_file(path)); }

Plan load_plan(const std::string& path) { return parse_plan(read_text_file(path)); }

}  // namespace rplan
