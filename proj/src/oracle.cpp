#include "rplan/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>

#include "rplan/engine.hpp"

namespace rplan {

bool within_guard(const Instance& instance, const OracleGuard& guard) {
  return instance.vertex_count() <= guard.max_vertices && instance.assets() <= guard.max_assets &&
         instance.traps().reload_sum() <= guard.max_reload_sum;
}

namespace {

using Key = std::array<std::uint64_t, 2>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = k[0] * 0x9E3779B97F4A7C15ULL;
    h ^= (k[1] + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

int bits_for(long long max_value) {
  int bits = 0;
  while ((1LL << bits) <= max_value) ++bits;
  return std::max(bits, 1);
}

class BitWriter {
 public:
  void put(std::uint64_t value, int width) {
    for (int i = 0; i < width; ++i) {
      if ((value >> i) & 1U) key_[pos_ / 64] |= (std::uint64_t{1} << (pos_ % 64));
      ++pos_;
    }
  }
  Key key() const { return key_; }

 private:
  Key key_{0, 0};
  int pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const Key& key) : key_(key) {}
  std::uint64_t get(int width) {
    std::uint64_t value = 0;
    for (int i = 0; i < width; ++i) {
      if ((key_[pos_ / 64] >> (pos_ % 64)) & 1U) value |= (std::uint64_t{1} << i);
      ++pos_;
    }
    return value;
  }

 private:
  Key key_;
  int pos_ = 0;
};

// Decoded canonical state. Clock values are rounds since trigger capped at
// c + 1; never-triggered traps are stored as c + 1 (both mean "active").
struct Canon {
  std::uint64_t occupied = 0;  // bit i = inner vertex i
  int at_start = 0;
  int at_target = 0;
  int dead = 0;
  std::vector<int> clock;  // per trap slot
};

struct Transition {
  std::vector<std::pair<VertexId, VertexId>> moves;  // inner mover -> destination
  std::vector<VertexId> departures;
};

class Search {
 public:
  explicit Search(const Instance& instance) : instance_(instance), g_(instance.topology()) {
    const VertexId s = g_.start();
    const VertexId t = g_.target();
    inner_of_.assign(g_.vertex_count(), -1);
    for (VertexId v = 0; v < static_cast<VertexId>(g_.vertex_count()); ++v) {
      if (v == s || v == t) continue;
      inner_of_[v] = static_cast<int>(inner_.size());
      inner_.push_back(v);
    }
    if (inner_.size() > 64) throw Error(ErrorCode::kGuardExceeded, "more than 64 inner vertices");
    slot_of_.assign(g_.vertex_count(), -1);
    for (VertexId r : instance_.traps().traps()) {
      slot_of_[r] = static_cast<int>(reload_.size());
      reload_.push_back(instance_.traps().reload(r));
    }
    count_bits_ = bits_for(instance_.assets());
    int total = static_cast<int>(inner_.size()) + 3 * count_bits_;
    for (int c : reload_) {
      clock_bits_.push_back(bits_for(c + 1));
      total += clock_bits_.back();
    }
    if (total > 128) throw Error(ErrorCode::kGuardExceeded, "state does not fit the search key");
    for (VertexId w : g_.neighbors(s)) {
      if (w == t) start_to_target_ = true;
      else start_neighbors_.push_back(w);
    }
  }

  Key encode(const Canon& c) const {
    BitWriter w;
    w.put(c.occupied, static_cast<int>(inner_.size()));
    w.put(static_cast<std::uint64_t>(c.at_start), count_bits_);
    w.put(static_cast<std::uint64_t>(c.at_target), count_bits_);
    w.put(static_cast<std::uint64_t>(c.dead), count_bits_);
    for (std::size_t i = 0; i < reload_.size(); ++i) {
      w.put(static_cast<std::uint64_t>(c.clock[i]), clock_bits_[i]);
    }
    return w.key();
  }

  Canon decode(const Key& key) const {
    BitReader r(key);
    Canon c;
    c.occupied = r.get(static_cast<int>(inner_.size()));
    c.at_start = static_cast<int>(r.get(count_bits_));
    c.at_target = static_cast<int>(r.get(count_bits_));
    c.dead = static_cast<int>(r.get(count_bits_));
    c.clock.resize(reload_.size());
    for (std::size_t i = 0; i < reload_.size(); ++i) c.clock[i] = static_cast<int>(r.get(clock_bits_[i]));
    return c;
  }

  Canon initial() const {
    Canon c;
    c.at_start = instance_.assets();
    c.clock.assign(reload_.size(), 0);
    for (std::size_t i = 0; i < reload_.size(); ++i) c.clock[i] = reload_[i] + 1;
    return c;
  }

  bool doomed(const Canon& c, VertexId v) const {
    int slot = slot_of_[v];
    return slot >= 0 && c.clock[slot] == 0;
  }

  bool finished(const Canon& c) const { return c.at_start == 0 && c.occupied == 0; }

  // Upper bound on survivors reachable from c.
  int potential(const Canon& c) const {
    int alive = c.at_target + c.at_start;
    for (std::uint64_t bits = c.occupied; bits; bits &= bits - 1) {
      VertexId v = inner_[std::countr_zero(bits)];
      if (!doomed(c, v)) ++alive;
    }
    return alive;
  }

  // Calls visit(successor, transition) for every legal successor, in a fixed
  // order. Stops early when visit returns false.
  void for_each_successor(const Canon& c,
                          const std::function<bool(const Canon&, const Transition&)>& visit) const {
    const VertexId t = g_.target();
    std::vector<VertexId> movers;
    bool any_doomed = false;
    for (std::uint64_t bits = c.occupied; bits; bits &= bits - 1) {
      VertexId v = inner_[std::countr_zero(bits)];
      if (doomed(c, v)) any_doomed = true;
      else movers.push_back(v);
    }

    Transition tr;
    std::uint64_t taken = 0;
    bool stop = false;

    auto finish = [&](bool moved) {
      // Departures: any subset of free start-neighbours, plus any number to t.
      std::vector<VertexId> free_ns;
      for (VertexId w : start_neighbors_) {
        if (!((taken >> inner_of_[w]) & 1U)) free_ns.push_back(w);
      }
      const std::size_t subsets = std::size_t{1} << free_ns.size();
      for (std::size_t mask = 0; mask < subsets && !stop; ++mask) {
        int k = std::popcount(mask);
        if (k > c.at_start) continue;
        int max_direct = start_to_target_ ? c.at_start - k : 0;
        for (int direct = 0; direct <= max_direct && !stop; ++direct) {
          if (!moved && !any_doomed && k == 0 && direct == 0) continue;
          tr.departures.clear();
          for (std::size_t i = 0; i < free_ns.size(); ++i) {
            if ((mask >> i) & 1U) tr.departures.push_back(free_ns[i]);
          }
          for (int d = 0; d < direct; ++d) tr.departures.push_back(t);
          Canon next = apply(c, tr);
          if (!visit(next, tr)) stop = true;
        }
      }
    };

    std::function<void(std::size_t, bool)> assign = [&](std::size_t i, bool moved) {
      if (stop) return;
      if (i == movers.size()) {
        finish(moved);
        return;
      }
      VertexId v = movers[i];
      auto try_dest = [&](VertexId to) {
        if (stop) return;
        if (to == t) {
          if (to != v) tr.moves.emplace_back(v, to);
          assign(i + 1, moved || to != v);
          if (to != v) tr.moves.pop_back();
          return;
        }
        std::uint64_t bit = std::uint64_t{1} << inner_of_[to];
        if (taken & bit) return;
        taken |= bit;
        if (to != v) tr.moves.emplace_back(v, to);
        assign(i + 1, moved || to != v);
        if (to != v) tr.moves.pop_back();
        taken &= ~bit;
      };
      try_dest(v);
      for (VertexId w : g_.neighbors(v)) {
        if (w == g_.start()) continue;
        try_dest(w);
      }
    };
    assign(0, false);
  }

  Canon apply(const Canon& c, const Transition& tr) const {
    const VertexId t = g_.target();
    Canon next;
    next.at_start = c.at_start;
    next.at_target = c.at_target;
    next.dead = c.dead;
    next.clock = c.clock;
    std::vector<char> moved(inner_.size(), 0);
    for (const auto& [from, to] : tr.moves) {
      moved[inner_of_[from]] = 1;
      if (to == t) ++next.at_target;
      else next.occupied |= std::uint64_t{1} << inner_of_[to];
    }
    for (std::uint64_t bits = c.occupied; bits; bits &= bits - 1) {
      int i = std::countr_zero(bits);
      if (moved[i]) continue;
      if (doomed(c, inner_[i])) ++next.dead;
      else next.occupied |= std::uint64_t{1} << i;
    }
    for (VertexId to : tr.departures) {
      --next.at_start;
      if (to == t) ++next.at_target;
      else next.occupied |= std::uint64_t{1} << inner_of_[to];
    }
    for (std::size_t i = 0; i < reload_.size(); ++i) {
      next.clock[i] = std::min(next.clock[i] + 1, reload_[i] + 1);
    }
    for (std::uint64_t bits = next.occupied; bits; bits &= bits - 1) {
      VertexId v = inner_[std::countr_zero(bits)];
      int slot = slot_of_[v];
      if (slot >= 0 && next.clock[slot] == reload_[slot] + 1) next.clock[slot] = 0;
    }
    return next;
  }

  // Turns a chain of canonical states into a labelled plan, assigning
  // departures to the lowest-index assets still waiting at s.
  IndexedPlan reconstruct(const std::vector<Key>& chain) const {
    const VertexId s = g_.start();
    const VertexId t = g_.target();
    const int m = instance_.assets();
    std::vector<VertexId> pos(m, s);
    IndexedPlan plan;
    plan.rows.assign(m, {s});
    for (std::size_t step = 0; step + 1 < chain.size(); ++step) {
      Canon cur = decode(chain[step]);
      Transition found;
      bool ok = false;
      for_each_successor(cur, [&](const Canon& next, const Transition& tr) {
        if (encode(next) == chain[step + 1]) {
          found = tr;
          ok = true;
          return false;
        }
        return true;
      });
      if (!ok) throw Error(ErrorCode::kInternal, "witness chain is not connected");
      std::vector<VertexId> nxt = pos;
      for (int a = 0; a < m; ++a) {
        VertexId v = pos[a];
        if (v == kDead || v == t || v == s) continue;
        if (doomed(cur, v)) {
          nxt[a] = kDead;
          continue;
        }
        for (const auto& [from, to] : found.moves) {
          if (from == v) nxt[a] = to;
        }
      }
      std::size_t next_departure = 0;
      for (int a = 0; a < m && next_departure < found.departures.size(); ++a) {
        if (pos[a] == s) nxt[a] = found.departures[next_departure++];
      }
      pos = nxt;
      for (int a = 0; a < m; ++a) plan.rows[a].push_back(pos[a]);
    }
    return plan;
  }

  std::size_t inner_count() const { return inner_.size(); }

 private:
  const Instance& instance_;
  const Topology& g_;
  std::vector<VertexId> inner_;
  std::vector<int> inner_of_;
  std::vector<int> slot_of_;
  std::vector<int> reload_;
  std::vector<int> clock_bits_;
  int count_bits_ = 1;
  std::vector<VertexId> start_neighbors_;
  bool start_to_target_ = false;
};

bool trap_free_route_exists(const Instance& instance) {
  const Topology& g = instance.topology();
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<VertexId> queue{g.start()};
  seen[g.start()] = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (v == g.target()) return true;
    for (VertexId w : g.neighbors(v)) {
      if (seen[w] || instance.traps().is_trap(w)) continue;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

struct Found {
  int best = -1;
  std::vector<Key> chain;
};

Found search_dedup(const Search& search, const Canon& root, int ceiling, SearchStats& stats) {
  struct Node {
    Key key;
    int parent;
  };
  std::vector<Node> nodes;
  std::unordered_map<Key, int, KeyHash> index;
  Found found;
  int best_node = -1;

  nodes.push_back({search.encode(root), -1});
  index.emplace(nodes.back().key, 0);
  if (search.finished(root)) {
    found.best = root.at_target;
    best_node = 0;
  }

  std::size_t head = 0;
  while (head < nodes.size() && found.best < ceiling) {
    stats.frontier_peak = std::max<std::uint64_t>(stats.frontier_peak, nodes.size() - head);
    const int current = static_cast<int>(head++);
    Canon c = search.decode(nodes[current].key);
    if (search.finished(c) || search.potential(c) <= found.best) continue;
    ++stats.states_expanded;
    search.for_each_successor(c, [&](const Canon& next, const Transition&) {
      Key key = search.encode(next);
      auto [it, fresh] = index.emplace(key, static_cast<int>(nodes.size()));
      if (!fresh) return true;
      nodes.push_back({key, current});
      if (search.finished(next) && next.at_target > found.best) {
        found.best = next.at_target;
        best_node = it->second;
        if (found.best >= ceiling) return false;
      }
      return true;
    });
  }
  stats.states_stored = nodes.size();

  for (int at = best_node; at >= 0; at = nodes[at].parent) found.chain.push_back(nodes[at].key);
  std::reverse(found.chain.begin(), found.chain.end());
  return found;
}

Found search_tree(const Search& search, const Canon& root, int max_depth, SearchStats& stats) {
  Found found;
  std::vector<Key> path{search.encode(root)};
  std::function<void(const Canon&, int)> walk = [&](const Canon& c, int depth) {
    if (search.finished(c)) {
      if (c.at_target > found.best) {
        found.best = c.at_target;
        found.chain = path;
      }
      return;
    }
    if (depth >= max_depth) return;
    ++stats.states_expanded;
    search.for_each_successor(c, [&](const Canon& next, const Transition&) {
      path.push_back(search.encode(next));
      walk(next, depth + 1);
      path.pop_back();
      return true;
    });
  };
  walk(root, 0);
  return found;
}

}  // namespace

SolveReport oracle_solve(const Instance& instance, const OracleOptions& options) {
  if (!within_guard(instance, options.guard)) {
    throw Error(ErrorCode::kGuardExceeded,
                "instance (|V|=" + std::to_string(instance.vertex_count()) +
                    ", m=" + std::to_string(instance.assets()) +
                    ", reload sum=" + std::to_string(instance.traps().reload_sum()) +
                    ") exceeds the oracle guard (|V|<=" + std::to_string(options.guard.max_vertices) +
                    ", m<=" + std::to_string(options.guard.max_assets) +
                    ", reload sum<=" + std::to_string(options.guard.max_reload_sum) + ")");
  }
  if (!options.dedup && options.max_depth <= 0) {
    throw Error(ErrorCode::kInvalidParameter, "a search without deduplication needs max_depth");
  }

  Search search(instance);
  SearchStats stats;
  const Canon root = search.initial();
  const int ceiling = trap_free_route_exists(instance) ? instance.assets() : instance.assets() - 1;
  Found found = options.dedup ? search_dedup(search, root, ceiling, stats)
                              : search_tree(search, root, options.max_depth, stats);

  SolveReport report;
  report.algorithm = AlgorithmTag::kExactOracle;
  report.stats = stats;
  report.diagnostics.push_back("states expanded: " + std::to_string(stats.states_expanded));
  report.diagnostics.push_back("states stored: " + std::to_string(stats.states_stored));
  report.diagnostics.push_back("frontier peak: " + std::to_string(stats.frontier_peak));
  if (found.best < 0) {
    report.max_survivors = 0;
    report.diagnostics.push_back("no valid plan exists");
    return report;
  }
  report.max_survivors = found.best;
  report.witness = name_plan(instance, search.reconstruct(found.chain));
  return report;
}

LengthBoundReport check_length_bound(const Instance& instance, const Plan& plan) {
  const IndexedPlan indexed = index_plan(instance, plan);
  const ValidationVerdict verdict = validate_plan(instance, indexed);
  if (!verdict.is_valid) {
    throw Error(ErrorCode::kInvalidPlan, "plan is not valid: " + verdict.violations.front().message);
  }
  LengthBoundReport report;
  const long long base = 2LL * instance.assets() + static_cast<long long>(instance.vertex_count());
  report.bound = base * base;
  report.length = static_cast<long long>(indexed.length());
  report.activations = activation_rounds(instance, indexed);
  for (std::size_t i = 1; i < report.activations.size(); ++i) {
    long long gap = report.activations[i] - report.activations[i - 1];
    report.gaps.push_back(gap);
    if (gap >= report.bound) {
      report.flags.push_back("activation gap " + std::to_string(gap) + " between rounds " +
                             std::to_string(report.activations[i - 1]) + " and " +
                             std::to_string(report.activations[i]) + " reaches (2m+n)^2 = " +
                             std::to_string(report.bound));
    }
  }
  const long long total_bound = static_cast<long long>(report.activations.size() + 1) * report.bound;
  if (report.length >= total_bound) {
    report.flags.push_back("plan length " + std::to_string(report.length) +
                           " reaches (q+1)(2m+n)^2 = " + std::to_string(total_bound));
  }
  return report;
}

}  // namespace rplan
