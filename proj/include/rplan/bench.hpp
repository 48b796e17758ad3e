#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rplan/core.hpp"
#include "rplan/oracle.hpp"

namespace rplan {

struct BenchOptions {
  // "auto" or an algorithm tag name (path-rws, exact-oracle, ...).
  std::vector<std::string> algorithms{"auto", "exact-oracle"};
  unsigned threads = 0;  // 0 = hardware concurrency
  OracleOptions oracle;
};

enum class BenchStatus { kOk, kSkipped, kError };

struct BenchRow {
  std::string instance;   // file name inside the corpus directory
  std::string algorithm;  // as requested
  BenchStatus status = BenchStatus::kOk;
  std::optional<int> survivors;
  std::string used;  // algorithm that produced the answer
  double wall_ms = 0.0;
  std::optional<std::uint64_t> states_expanded;
  std::string message;  // error or skip reason
};

struct BenchTable {
  std::vector<BenchRow> rows;  // corpus file order, then requested algorithm order
  int issues = 0;              // error rows; skips (guard, intractable) do not count
};

// Runs every `.inst` file of `directory` (sorted by name) with every
// requested algorithm. Files are processed concurrently; the table order
// does not depend on completion order. Throws Error(kIoError) when the
// directory cannot be read, Error(kInvalidParameter) for unknown names.
BenchTable bench(const std::string& directory, const BenchOptions& options = {});

std::string format_bench_text(const BenchTable& table, bool timing = true);
std::string format_bench_json(const BenchTable& table, bool timing = true);

}  // namespace rplan
