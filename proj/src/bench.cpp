#include "rplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rplan/formats.hpp"
#include "rplan/poly_solvers.hpp"

namespace rplan {

namespace {

std::string_view status_name(BenchStatus status) {
  switch (status) {
    case BenchStatus::kOk: return "ok";
    case BenchStatus::kSkipped: return "skipped";
    case BenchStatus::kError: return "error";
  }
  return "error";
}

bool is_skip(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGuardExceeded:
    case ErrorCode::kIntractableFragment:
    case ErrorCode::kNotAPath:
    case ErrorCode::kNotAStar:
    case ErrorCode::kNotDisjointPaths:
    case ErrorCode::kNotCondensedLinear:
      return true;
    default:
      return false;
  }
}

std::vector<BenchRow> run_file(const std::filesystem::path& path, const BenchOptions& options,
                               const std::vector<std::optional<AlgorithmTag>>& tags) {
  std::vector<BenchRow> rows;
  std::optional<Instance> instance;
  std::string load_error;
  try {
    instance = load_instance(path.string());
  } catch (const Error& e) {
    load_error = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  for (std::size_t k = 0; k < tags.size(); ++k) {
    BenchRow row;
    row.instance = path.filename().string();
    row.algorithm = options.algorithms[k];
    if (!instance) {
      row.status = BenchStatus::kError;
      row.message = load_error;
      rows.push_back(row);
      continue;
    }
    SolveOptions solve_options;
    solve_options.algorithm = tags[k];
    solve_options.oracle = options.oracle;
    const auto begin = std::chrono::steady_clock::now();
    try {
      const SolveReport report = solve(*instance, solve_options);
      row.survivors = report.max_survivors;
      row.used = std::string(algorithm_tag_name(report.algorithm));
      if (report.stats) row.states_expanded = report.stats->states_expanded;
    } catch (const Error& e) {
      row.status = is_skip(e.code()) ? BenchStatus::kSkipped : BenchStatus::kError;
      row.message = std::string(error_code_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      row.status = BenchStatus::kError;
      row.message = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

BenchTable bench(const std::string& directory, const BenchOptions& options) {
  std::vector<std::optional<AlgorithmTag>> tags;
  for (const auto& name : options.algorithms) {
    if (name == "auto") {
      tags.emplace_back();
    } else if (auto tag = parse_algorithm_tag(name)) {
      tags.emplace_back(*tag);
    } else {
      throw Error(ErrorCode::kInvalidParameter, "unknown algorithm '" + name + "'");
    }
  }

  std::error_code ec;
  std::vector<std::filesystem::path> files;
  std::filesystem::directory_iterator it(directory, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot read directory '" + directory + "': " + ec.message());
  for (const auto& entry : it)
    if (entry.is_regular_file() && entry.path().extension() == ".inst") files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

  std::vector<std::vector<BenchRow>> results(files.size());
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(files.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) results[i] = run_file(files[i], options, tags);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchTable table;
  for (auto& rows : results) {
    for (auto& row : rows) {
      table.issues += row.status == BenchStatus::kError;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string format_bench_text(const BenchTable& table, bool timing) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"instance", "algorithm", "status", "survivors", "used"};
  if (timing) header.push_back("ms");
  header.push_back("states");
  header.push_back("note");
  cells.push_back(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> line{row.instance, row.algorithm, std::string(status_name(row.status)),
                                  row.survivors ? std::to_string(*row.survivors) : "-",
                                  row.used.empty() ? "-" : row.used};
    if (timing) {
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(3) << row.wall_ms;
      line.push_back(ms.str());
    }
    line.push_back(row.states_expanded ? std::to_string(*row.states_expanded) : "-");
    line.push_back(row.message);
    cells.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) text += "  ";
      text += line[c];
      if (c + 1 < line.size()) text += std::string(width[c] - line[c].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  }
  out << "issues: " << table.issues << '\n';
  return out.str();
}

std::string format_bench_json(const BenchTable& table, bool timing) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json j;
    j["instance"] = row.instance;
    j["algorithm"] = row.algorithm;
    j["status"] = status_name(row.status);
    j["survivors"] = row.survivors ? nlohmann::ordered_json(*row.survivors) : nlohmann::ordered_json();
    j["used"] = row.used.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(row.used);
    if (timing) j["wall_ms"] = row.wall_ms;
    j["states_expanded"] =
        row.states_expanded ? nlohmann::ordered_json(*row.states_expanded) : nlohmann::ordered_json();
    if (!row.message.empty()) j["message"] = row.message;
    rows.push_back(j);
  }
  nlohmann::ordered_json doc;
  doc["rows"] = rows;
  doc["issues"] = table.issues;
  return doc.dump(2) + "\n";
}

}  // namespace rplan
