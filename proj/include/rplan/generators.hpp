#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rplan/core.hpp"

namespace rplan {

enum class GadgetKind { kBatch, kDestruction, kElement };

// A subgraph with named vertices, ready to be spliced into a larger
// instance through its input and output ports.
struct GadgetSpec {
  GadgetKind kind = GadgetKind::kBatch;
  long long x = 0;             // batch
  long long length = 0;        // destruction
  long long start_reload = 0;  // destruction
  long long size = 0;          // element
  std::string input;
  std::string output;
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::string, long long>> traps;
};

// Star with leaves <p>v0..<p>v<x> around <p>c; v0 has reload 1, vx reload x.
// Throws Error(kInvalidParameter) for x < 1.
GadgetSpec batch_gadget(long long x, const std::string& prefix = "");

// Path <p>1..<p>length of traps with reloads c0, c0-1, ... (all >= 1).
GadgetSpec destruction_gadget(long long length, long long start_reload, const std::string& prefix);

// Guard trap <p>guard of reload size+1, then <p>store_1..<p>store_<size+1>.
GadgetSpec element_gadget(long long size, const std::string& prefix);

// s - v0, vx - t, with 2x+2 assets unless `assets` is given; goal x.
Instance batch_instance(long long x, std::optional<int> assets = std::nullopt);

// One named quantity of a generated construction. `actual` is recomputed
// from the emitted structure; it is empty only if it could not be measured.
struct ReceiptItem {
  std::string name;
  long long expected = 0;
  std::optional<long long> actual;

  bool ok() const { return actual && *actual == expected; }
};

struct ReductionReceipt {
  std::optional<Instance> instance;  // empty on a dry run
  std::vector<ReceiptItem> items;
  std::string provenance;
  bool faithful = true;
  bool dry_run = false;

  bool consistent() const;
  std::optional<long long> expected(const std::string& name) const;
  std::optional<long long> actual(const std::string& name) const;
};

struct GeneratorOptions {
  bool dry_run = false;
  // Replaces the large limiting constant L by ceil(scale * L); any value
  // other than 1 marks the receipt NON-FAITHFUL.
  double scale = 1.0;
  long long vertex_cap = 1'000'000;
  // Accept T/4 <= s(y) <= T/2 instead of the strict bounds.
  bool relax_bounds = false;
};

// Elements are 1..3N, N = sets.size() / 3. Duplicate sets are allowed.
// Throws Error(kNotRX3C), or Error(kMaterializationTooLarge) when the
// slowdown path would exceed the vertex cap without a dry run.
ReductionReceipt gen_rx3c(int universe_size, const std::vector<std::vector<int>>& sets,
                          const GeneratorOptions& options = {});

// Throws Error(kNot3Partition), Error(kInvalidParameter) for a bad scale,
// Error(kMaterializationTooLarge).
ReductionReceipt gen_3partition(const std::vector<long long>& sizes, long long bound,
                                const GeneratorOptions& options = {});

struct RandomSpec {
  std::uint64_t seed = 0;
  int vertices = 6;  // including s and t
  double trap_density = 0.3;
  int reload_max = 3;
  int assets = 3;
};

// Connected graph: random spanning tree over s, v1.., t (t hangs off an
// inner vertex, so s and t are adjacent only when vertices == 2) plus a few
// extra edges. Byte-for-byte reproducible from the seed.
// Throws Error(kInvalidParameter).
Instance gen_random(const RandomSpec& params);

}  // namespace rplan
