#include "rplan/render.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "rplan/engine.hpp"

namespace rplan {

namespace {

std::string escape(const std::string& id) {
  std::string out;
  for (char ch : id) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string quote(const std::string& id) { return '"' + escape(id) + '"'; }

IndexedPlan checked_plan(const Instance& instance, const Plan& plan) {
  IndexedPlan indexed = index_plan(instance, plan);
  const ValidationVerdict verdict = validate_plan(instance, indexed);
  if (!verdict.is_valid) {
    const Violation& v = verdict.violations.front();
    throw Error(ErrorCode::kInvalidPlan,
                "plan violates condition " + std::to_string(v.condition) + ": " + v.message);
  }
  return indexed;
}

// "1-3,5" from sorted rounds.
std::string ranges(const std::vector<int>& rounds) {
  std::string out;
  for (std::size_t i = 0; i < rounds.size();) {
    std::size_t j = i;
    while (j + 1 < rounds.size() && rounds[j + 1] == rounds[j] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(rounds[i]);
    if (j > i) out += "-" + std::to_string(rounds[j]);
    i = j + 1;
  }
  return out;
}

}  // namespace

std::string render_dot(const Instance& instance, const std::optional<Plan>& plan) {
  const Topology& g = instance.topology();
  std::vector<std::vector<std::string>> visits(g.vertex_count());
  if (plan) {
    const IndexedPlan indexed = checked_plan(instance, *plan);
    for (std::size_t a = 0; a < indexed.rows.size(); ++a) {
      std::vector<std::vector<int>> rounds(g.vertex_count());
      for (std::size_t j = 0; j < indexed.rows[a].size(); ++j) {
        const VertexId v = indexed.rows[a][j];
        if (v != kDead && !g.is_terminal(v)) rounds[v].push_back(static_cast<int>(j));
      }
      for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (!rounds[v].empty()) visits[v].push_back("a" + std::to_string(a) + "@" + ranges(rounds[v]));
    }
  }

  std::ostringstream out;
  out << "graph routing {\n";
  out << "  node [shape=circle];\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto id = static_cast<VertexId>(v);
    std::string label = escape(g.name(id));
    std::string attrs;
    if (g.is_terminal(id)) {
      attrs = ", shape=doublecircle";
    } else if (instance.traps().is_trap(id)) {
      label += "\\nc=" + std::to_string(instance.traps().reload(id));
      attrs = ", shape=box";
    }
    for (const auto& visit : visits[v]) label += "\\n" + visit;
    out << "  " << quote(g.name(id)) << " [label=\"" << label << '"' << attrs << "];\n";
  }
  for (auto [u, w] : g.edges()) out << "  " << quote(g.name(u)) << " -- " << quote(g.name(w)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string render_timeline(const Instance& instance, const Plan& plan) {
  const Topology& g = instance.topology();
  if (g.vertex_count() > kTimelineMaxVertices) {
    throw Error(ErrorCode::kInvalidParameter,
                "timeline is limited to " + std::to_string(kTimelineMaxVertices) + " vertices");
  }
  const IndexedPlan indexed = checked_plan(instance, plan);
  const std::vector<SimState> states = replay(instance, indexed);

  std::vector<VertexId> columns{g.start()};
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!g.is_terminal(static_cast<VertexId>(v))) columns.push_back(static_cast<VertexId>(v));
  columns.push_back(g.target());

  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"round"};
  for (VertexId v : columns) header.push_back(g.name(v));
  header.push_back(std::string(kDeadToken));
  table.push_back(header);

  for (std::size_t j = 0; j < states.size(); ++j) {
    const SimState& state = states[j];
    std::vector<std::string> row{std::to_string(j)};
    for (VertexId v : columns) {
      if (v == g.start()) {
        row.push_back(std::to_string(state.at_start));
        continue;
      }
      if (v == g.target()) {
        row.push_back(std::to_string(state.at_target));
        continue;
      }
      std::string cell = ".";
      for (std::size_t a = 0; a < indexed.rows.size(); ++a)
        if (indexed.rows[a][j] == v) cell = std::to_string(a);
      if (instance.traps().is_trap(v)) {
        const int since = state.clocks.rounds_since_trigger(v);
        if (state.doomed(v)) {
          cell += "!";
        } else if (since >= 1 && since <= instance.traps().reload(v)) {
          cell += "~";
        }
      }
      row.push_back(cell);
    }
    row.push_back(std::to_string(state.dead));
    table.push_back(row);
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : table)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << row[c];
      if (c + 1 < row.size()) out << std::string(width[c] - row[c].size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rplan
