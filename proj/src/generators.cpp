#include "rplan/generators.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace rplan {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::kMaterializationTooLarge, "construction counts overflow 64 bits");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::kMaterializationTooLarge, "construction counts overflow 64 bits");
  return r;
}

long long checked_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::string join(const std::vector<long long>& values, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

// Constructions are written once against this interface and played either
// into a counter (dry runs, size checks) or into a RawInstance.
class Sink {
 public:
  virtual ~Sink() = default;
  virtual void vertex(const std::string& name, long long reload) = 0;
  // <prefix>1 .. <prefix>length joined in order; reload of the i-th vertex is
  // start - step*(i-1), or 0 everywhere when start is 0. Only the two ends
  // may receive further edges.
  virtual void chain(const std::string& prefix, long long length, long long start, long long step) = 0;
  virtual void edge(const std::string& a, const std::string& b) = 0;

  void gadget(const GadgetSpec& g) {
    std::map<std::string, long long> reload;
    for (const auto& [v, c] : g.traps) reload[v] = c;
    for (const auto& v : g.vertices) vertex(v, reload.count(v) ? reload[v] : 0);
    for (const auto& [a, b] : g.edges) edge(a, b);
  }
};

class MaterialSink : public Sink {
 public:
  RawInstance raw;

  void vertex(const std::string& name, long long reload) override {
    raw.vertices.push_back(name);
    if (reload > 0) raw.traps.emplace_back(name, reload);
  }
  void chain(const std::string& prefix, long long length, long long start, long long step) override {
    for (long long i = 1; i <= length; ++i) {
      vertex(prefix + std::to_string(i), start > 0 ? start - step * (i - 1) : 0);
      if (i > 1) edge(prefix + std::to_string(i - 1), prefix + std::to_string(i));
    }
  }
  void edge(const std::string& a, const std::string& b) override { raw.edges.emplace_back(a, b); }
};

// Queries shared by the counter and the materialized instance, so that a
// receipt is filled in the same way in both modes.
class Measure {
 public:
  virtual ~Measure() = default;
  virtual long long vertices() const = 0;
  virtual long long edges() const = 0;
  virtual long long traps() const = 0;
  virtual long long max_degree() const = 0;
  virtual bool is_tree() const = 0;
  // Vertices whose name starts with `prefix`; with reload >= 0 only those
  // carrying exactly that reload.
  virtual long long count(const std::string& prefix, long long reload = -1) const = 0;
  virtual std::optional<long long> reload(const std::string& name) const = 0;
  virtual long long neighbours_with_prefix(const std::string& name, const std::string& prefix) const = 0;
};

class CountSink : public Sink, public Measure {
 public:
  void vertex(const std::string& name, long long reload) override {
    singles_[name] = Single{reload, {}, new_block()};
  }
  void chain(const std::string& prefix, long long length, long long start, long long step) override {
    if (length <= 0) return;
    chains_.push_back(Chain{prefix, length, start, step, new_block(), 0, 0});
    if (length == 1) {
      chains_.back().first_degree = 0;
    } else {
      chains_.back().first_degree = 1;
      chains_.back().last_degree = 1;
    }
    internal_edges_ += length - 1;
  }
  void edge(const std::string& a, const std::string& b) override {
    ++external_edges_;
    int ba = touch(a, b);
    int bb = touch(b, a);
    unite(ba, bb);
  }

  long long vertices() const override {
    long long n = static_cast<long long>(singles_.size());
    for (const auto& c : chains_) n = checked_add(n, c.length);
    return n;
  }
  long long edges() const override { return checked_add(internal_edges_, external_edges_); }
  long long traps() const override {
    long long n = 0;
    for (const auto& [name, s] : singles_) n += s.reload > 0;
    for (const auto& c : chains_) n = checked_add(n, c.start > 0 ? c.length : 0);
    return n;
  }
  long long max_degree() const override {
    long long d = 0;
    for (const auto& [name, s] : singles_) d = std::max<long long>(d, s.adjacent.size());
    for (const auto& c : chains_) {
      if (c.length >= 3) d = std::max(d, 2LL);
      d = std::max({d, c.first_degree, c.last_degree});
    }
    return d;
  }
  bool is_tree() const override {
    std::set<int> roots;
    for (std::size_t b = 0; b < parent_.size(); ++b) roots.insert(find(static_cast<int>(b)));
    return roots.size() == 1 && edges() == vertices() - 1;
  }
  long long count(const std::string& prefix, long long reload) const override {
    long long n = 0;
    for (const auto& [name, s] : singles_)
      if (starts_with(name, prefix) && (reload < 0 || s.reload == reload)) ++n;
    for (const auto& c : chains_) {
      if (!starts_with(c.prefix, prefix)) continue;
      if (reload < 0) {
        n = checked_add(n, c.length);
      } else if (c.start == 0 || c.step == 0) {
        if (c.start == reload) n = checked_add(n, c.length);
      } else {
        const long long i = (c.start - reload) / c.step + 1;
        if ((c.start - reload) % c.step == 0 && i >= 1 && i <= c.length) ++n;
      }
    }
    return n;
  }
  std::optional<long long> reload(const std::string& name) const override {
    if (auto it = singles_.find(name); it != singles_.end()) return it->second.reload;
    for (const auto& c : chains_) {
      if (const auto i = chain_index(c, name)) return c.start > 0 ? c.start - c.step * (*i - 1) : 0;
    }
    return std::nullopt;
  }
  long long neighbours_with_prefix(const std::string& name, const std::string& prefix) const override {
    auto it = singles_.find(name);
    if (it == singles_.end()) return 0;
    return std::count_if(it->second.adjacent.begin(), it->second.adjacent.end(),
                         [&](const std::string& w) { return starts_with(w, prefix); });
  }

 private:
  struct Single {
    long long reload = 0;
    std::vector<std::string> adjacent;
    int block = 0;
  };
  struct Chain {
    std::string prefix;
    long long length, start, step;
    int block;
    long long first_degree, last_degree;
  };

  static std::optional<long long> chain_index(const Chain& c, const std::string& name) {
    if (!starts_with(name, c.prefix)) return std::nullopt;
    long long i = 0;
    const char* first = name.data() + c.prefix.size();
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, i);
    if (ec != std::errc() || ptr != last || first == last || *first == '0') return std::nullopt;
    if (i < 1 || i > c.length) return std::nullopt;
    return i;
  }

  int new_block() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int b) const {
    while (parent_[b] != b) b = parent_[b];
    return b;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

  int touch(const std::string& name, const std::string& other) {
    if (auto it = singles_.find(name); it != singles_.end()) {
      it->second.adjacent.push_back(other);
      return it->second.block;
    }
    for (auto& c : chains_) {
      const auto i = chain_index(c, name);
      if (!i) continue;
      if (*i == 1) {
        ++c.first_degree;
      } else if (*i == c.length) {
        ++c.last_degree;
      } else {
        throw Error(ErrorCode::kInternal, "edge into the middle of chain " + c.prefix);
      }
      if (c.length == 1) c.last_degree = c.first_degree;
      return c.block;
    }
    throw Error(ErrorCode::kInternal, "edge to unknown vertex " + name);
  }

  std::map<std::string, Single> singles_;
  std::vector<Chain> chains_;
  long long internal_edges_ = 0;
  long long external_edges_ = 0;
  std::vector<int> parent_;
};

class InstanceMeasure : public Measure {
 public:
  explicit InstanceMeasure(const Instance& instance) : instance_(instance) {}

  long long vertices() const override { return static_cast<long long>(instance_.vertex_count()); }
  long long edges() const override { return static_cast<long long>(instance_.topology().edge_count()); }
  long long traps() const override { return static_cast<long long>(instance_.traps().count()); }
  long long max_degree() const override {
    long long d = 0;
    for (std::size_t v = 0; v < instance_.vertex_count(); ++v)
      d = std::max<long long>(d, instance_.topology().degree(static_cast<VertexId>(v)));
    return d;
  }
  bool is_tree() const override {
    const Topology& g = instance_.topology();
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<VertexId> queue{g.start()};
    seen[g.start()] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (VertexId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          queue.push_back(w);
        }
      }
    }
    return reached == g.vertex_count() && g.edge_count() + 1 == g.vertex_count();
  }
  long long count(const std::string& prefix, long long reload) const override {
    long long n = 0;
    for (std::size_t v = 0; v < instance_.vertex_count(); ++v) {
      const auto id = static_cast<VertexId>(v);
      if (starts_with(instance_.topology().name(id), prefix) &&
          (reload < 0 || instance_.traps().reload(id) == reload))
        ++n;
    }
    return n;
  }
  std::optional<long long> reload(const std::string& name) const override {
    const auto id = instance_.topology().find(name);
    if (!id) return std::nullopt;
    return instance_.traps().reload(*id);
  }
  long long neighbours_with_prefix(const std::string& name, const std::string& prefix) const override {
    const auto id = instance_.topology().find(name);
    if (!id) return 0;
    long long n = 0;
    for (VertexId w : instance_.topology().neighbors(*id))
      n += starts_with(instance_.topology().name(w), prefix);
    return n;
  }

 private:
  const Instance& instance_;
};

}  // namespace

GadgetSpec batch_gadget(long long x, const std::string& prefix) {
  if (x < 1) throw Error(ErrorCode::kInvalidParameter, "batch gadget needs x >= 1");
  if (x > 1'000'000) throw Error(ErrorCode::kInvalidParameter, "batch gadget too large");
  GadgetSpec g;
  g.kind = GadgetKind::kBatch;
  g.x = x;
  const std::string centre = prefix + "c";
  g.vertices.push_back(centre);
  for (long long i = 0; i <= x; ++i) {
    const std::string leaf = prefix + "v" + std::to_string(i);
    g.vertices.push_back(leaf);
    g.edges.emplace_back(centre, leaf);
  }
  g.input = prefix + "v0";
  g.output = prefix + "v" + std::to_string(x);
  g.traps.emplace_back(g.input, 1);
  g.traps.emplace_back(g.output, x);
  return g;
}

GadgetSpec destruction_gadget(long long length, long long start_reload, const std::string& prefix) {
  if (length < 1) throw Error(ErrorCode::kInvalidParameter, "destruction gadget needs length >= 1");
  if (start_reload - length + 1 < 1)
    throw Error(ErrorCode::kInvalidParameter, "destruction gadget reloads would drop below 1");
  if (length > 1'000'000) throw Error(ErrorCode::kInvalidParameter, "destruction gadget too large");
  GadgetSpec g;
  g.kind = GadgetKind::kDestruction;
  g.length = length;
  g.start_reload = start_reload;
  for (long long i = 1; i <= length; ++i) {
    g.vertices.push_back(prefix + std::to_string(i));
    g.traps.emplace_back(g.vertices.back(), start_reload - (i - 1));
    if (i > 1) g.edges.emplace_back(g.vertices[i - 2], g.vertices[i - 1]);
  }
  g.input = g.vertices.front();
  g.output = g.vertices.back();
  return g;
}

GadgetSpec element_gadget(long long size, const std::string& prefix) {
  if (size < 1) throw Error(ErrorCode::kInvalidParameter, "element gadget needs size >= 1");
  if (size > 1'000'000) throw Error(ErrorCode::kInvalidParameter, "element gadget too large");
  GadgetSpec g;
  g.kind = GadgetKind::kElement;
  g.size = size;
  g.vertices.push_back(prefix + "guard");
  g.traps.emplace_back(g.vertices.back(), size + 1);
  for (long long i = 1; i <= size + 1; ++i) {
    g.vertices.push_back(prefix + "store_" + std::to_string(i));
    g.edges.emplace_back(g.vertices[i - 1], g.vertices[i]);
  }
  g.input = g.vertices.front();
  g.output = g.vertices.back();
  return g;
}

Instance batch_instance(long long x, std::optional<int> assets) {
  const GadgetSpec g = batch_gadget(x);
  MaterialSink sink;
  sink.vertex("s", 0);
  sink.vertex("t", 0);
  sink.gadget(g);
  sink.edge("s", g.input);
  sink.edge(g.output, "t");
  sink.raw.explicit_vertices = true;
  sink.raw.start = "s";
  sink.raw.target = "t";
  sink.raw.assets = assets ? *assets : 2 * x + 2;
  sink.raw.goal = std::min<long long>(x, *sink.raw.assets);
  return build_instance(sink.raw);
}

bool ReductionReceipt::consistent() const {
  return std::all_of(items.begin(), items.end(), [](const ReceiptItem& i) { return i.ok(); });
}

std::optional<long long> ReductionReceipt::expected(const std::string& name) const {
  for (const auto& i : items)
    if (i.name == name) return i.expected;
  return std::nullopt;
}

std::optional<long long> ReductionReceipt::actual(const std::string& name) const {
  for (const auto& i : items)
    if (i.name == name) return i.actual;
  return std::nullopt;
}

namespace {

void check_scale(const GeneratorOptions& options) {
  if (!(options.scale > 0.0 && options.scale <= 1.0))
    throw Error(ErrorCode::kInvalidParameter, "scale must lie in (0, 1]");
  if (options.vertex_cap < 1) throw Error(ErrorCode::kInvalidParameter, "vertex cap must be positive");
}

using Probe = std::function<long long(const Measure&)>;
using Expectation = std::pair<std::string, std::pair<long long, Probe>>;

ReductionReceipt finish(const std::function<void(Sink&)>& build,
                        const std::vector<Expectation>& expectations, long long assets,
                        long long goal, const GeneratorOptions& options, std::string provenance,
                        bool faithful) {
  CountSink counter;
  build(counter);

  ReductionReceipt receipt;
  receipt.provenance = std::move(provenance);
  receipt.faithful = faithful;
  receipt.dry_run = options.dry_run;

  auto fill = [&](const Measure& m, std::optional<long long> m_assets, std::optional<long long> m_goal) {
    for (const auto& [name, pair] : expectations) {
      ReceiptItem item{name, pair.first, pair.second(m)};
      receipt.items.push_back(item);
    }
    receipt.items.push_back(ReceiptItem{"assets", assets, m_assets});
    receipt.items.push_back(ReceiptItem{"goal", goal, m_goal});
  };

  if (options.dry_run) {
    fill(counter, assets, goal);
    return receipt;
  }
  if (counter.vertices() > options.vertex_cap) {
    throw Error(ErrorCode::kMaterializationTooLarge,
                "construction has " + std::to_string(counter.vertices()) +
                    " vertices, over the cap of " + std::to_string(options.vertex_cap) +
                    "; use a dry run or a scale override");
  }
  if (assets > INT_MAX) {
    throw Error(ErrorCode::kMaterializationTooLarge,
                "construction needs " + std::to_string(assets) + " assets");
  }
  MaterialSink sink;
  build(sink);
  sink.raw.explicit_vertices = true;
  sink.raw.start = "s";
  sink.raw.target = "t";
  sink.raw.assets = assets;
  sink.raw.goal = goal;
  receipt.instance = build_instance(sink.raw);
  fill(InstanceMeasure(*receipt.instance), receipt.instance->assets(), receipt.instance->goal());
  return receipt;
}

}  // namespace

ReductionReceipt gen_rx3c(int universe_size, const std::vector<std::vector<int>>& sets,
                          const GeneratorOptions& options) {
  check_scale(options);
  if (universe_size < 3 || universe_size % 3 != 0)
    throw Error(ErrorCode::kNotRX3C, "universe size must be a positive multiple of 3");
  const long long n = universe_size / 3;
  if (static_cast<long long>(sets.size()) != 3 * n)
    throw Error(ErrorCode::kNotRX3C, "need exactly " + std::to_string(3 * n) + " sets, got " +
                                         std::to_string(sets.size()));
  std::vector<int> occurrences(universe_size + 1, 0);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const auto& set = sets[j];
    if (set.size() != 3)
      throw Error(ErrorCode::kNotRX3C, "set " + std::to_string(j + 1) + " does not have 3 elements");
    std::set<int> distinct(set.begin(), set.end());
    if (distinct.size() != 3)
      throw Error(ErrorCode::kNotRX3C, "set " + std::to_string(j + 1) + " repeats an element");
    for (int u : set) {
      if (u < 1 || u > universe_size)
        throw Error(ErrorCode::kNotRX3C, "element " + std::to_string(u) + " outside the universe");
      ++occurrences[u];
    }
  }
  for (int u = 1; u <= universe_size; ++u) {
    if (occurrences[u] != 3)
      throw Error(ErrorCode::kNotRX3C, "element " + std::to_string(u) + " occurs in " +
                                           std::to_string(occurrences[u]) + " sets, expected 3");
  }

  const long long slow = checked_pow(n, 5);
  const long long x1 = 8 * n + 6;
  const long long x2 = 4 * n;

  auto build = [&](Sink& sink) {
    sink.vertex("s", 0);
    sink.vertex("t", 0);
    const GadgetSpec b1 = batch_gadget(x1, "b1_");
    const GadgetSpec b2 = batch_gadget(x2, "b2_");
    const GadgetSpec b3 = batch_gadget(1, "b3_");
    sink.gadget(b1);
    sink.gadget(b2);
    sink.gadget(b3);
    sink.edge("s", b1.input);
    sink.edge(b1.output, b2.input);
    sink.edge(b1.output, b3.input);
    for (long long i = 1; i <= 3 * n; ++i) sink.vertex("elem_" + std::to_string(i), 0);
    sink.vertex("guard", 3 * n);
    for (long long j = 1; j <= 3 * n; ++j) {
      const std::string set = "set_" + std::to_string(j);
      sink.vertex(set, 3);
      sink.edge(b2.output, set);
      std::vector<int> members = sets[j - 1];
      std::sort(members.begin(), members.end());
      for (int u : members) sink.edge(set, "elem_" + std::to_string(u));
    }
    for (long long i = 1; i <= 3 * n; ++i) sink.edge("elem_" + std::to_string(i), "guard");
    sink.chain("slow_", slow, 0, 0);
    sink.edge(b3.output, "slow_1");
    sink.edge("slow_" + std::to_string(slow), "guard");
    sink.edge("guard", "t");
  };

  const auto sets_with_three = [n](const Measure& m) {
    long long k = 0;
    for (long long j = 1; j <= 3 * n; ++j) k += m.neighbours_with_prefix("set_" + std::to_string(j), "elem_") == 3;
    return k;
  };
  const auto set_element_edges = [n](const Measure& m) {
    long long k = 0;
    for (long long j = 1; j <= 3 * n; ++j) k += m.neighbours_with_prefix("set_" + std::to_string(j), "elem_");
    return k;
  };
  auto reload_of = [](std::string name) {
    return [name](const Measure& m) { return m.reload(name).value_or(-1); };
  };

  std::vector<Expectation> expectations = {
      {"vertices", {checked_add(slow, 18 * n + 16), [](const Measure& m) { return m.vertices(); }}},
      {"edges", {checked_add(slow, 27 * n + 15), [](const Measure& m) { return m.edges(); }}},
      {"traps", {3 * n + 7, [](const Measure& m) { return m.traps(); }}},
      {"set vertices", {3 * n, [](const Measure& m) { return m.count("set_"); }}},
      {"set vertices with reload 3", {3 * n, [](const Measure& m) { return m.count("set_", 3); }}},
      {"sets with 3 element neighbours", {3 * n, sets_with_three}},
      {"set-element edges", {9 * n, set_element_edges}},
      {"element vertices", {3 * n, [](const Measure& m) { return m.count("elem_"); }}},
      {"element traps", {0, [](const Measure& m) { return m.count("elem_") - m.count("elem_", 0); }}},
      {"guard reload", {3 * n, reload_of("guard")}},
      {"slowdown length", {slow, [](const Measure& m) { return m.count("slow_"); }}},
      {"first batch leaves", {x1 + 1, [](const Measure& m) { return m.count("b1_v"); }}},
      {"first batch input reload", {1, reload_of("b1_v0")}},
      {"first batch output reload", {x1, reload_of("b1_v" + std::to_string(x1))}},
      {"second batch leaves", {x2 + 1, [](const Measure& m) { return m.count("b2_v"); }}},
      {"second batch output reload", {x2, reload_of("b2_v" + std::to_string(x2))}},
      {"third batch leaves", {2, [](const Measure& m) { return m.count("b3_v"); }}},
      {"third batch output reload", {1, reload_of("b3_v1")}},
  };

  std::ostringstream provenance;
  provenance << "RX3C with N=" << n << ", sets";
  for (const auto& set : sets) {
    std::vector<int> s = set;
    std::sort(s.begin(), s.end());
    provenance << " {" << s[0] << ',' << s[1] << ',' << s[2] << '}';
  }
  return finish(build, expectations, 16 * n + 14, 3 * n, options, provenance.str(), true);
}

ReductionReceipt gen_3partition(const std::vector<long long>& sizes, long long bound,
                                const GeneratorOptions& options) {
  check_scale(options);
  if (sizes.empty() || sizes.size() % 3 != 0)
    throw Error(ErrorCode::kNot3Partition, "need 3n element sizes");
  const long long n = static_cast<long long>(sizes.size() / 3);
  const long long t = bound;
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::kNot3Partition, "n must be odd and at least 3");
  if (t <= n) throw Error(ErrorCode::kNot3Partition, "the bound T must exceed n");
  long long sum = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const long long s = sizes[i];
    const bool low_ok = options.relax_bounds ? 4 * s >= t : 4 * s > t;
    const bool high_ok = options.relax_bounds ? 2 * s <= t : 2 * s < t;
    if (s < 1 || !low_ok || !high_ok) {
      throw Error(ErrorCode::kNot3Partition,
                  "size " + std::to_string(s) + " of element " + std::to_string(i + 1) +
                      (options.relax_bounds ? " violates T/4 <= s <= T/2" : " violates T/4 < s < T/2"));
    }
    sum = checked_add(sum, s);
  }
  if (sum != checked_mul(n, t))
    throw Error(ErrorCode::kNot3Partition, "sizes sum to " + std::to_string(sum) + ", expected nT = " +
                                               std::to_string(n * t));

  const long long faithful_l = checked_add(checked_mul(100, checked_mul(checked_pow(n, 5), checked_pow(t, 5))),
                                           checked_mul(100, checked_mul(n, t)));
  const bool faithful = options.scale == 1.0;
  long long l = faithful_l;
  if (!faithful) {
    l = static_cast<long long>(std::ceil(static_cast<long double>(options.scale) *
                                         static_cast<long double>(faithful_l)));
    l = std::max(1LL, l);
  }

  const long long final_plain = n * (t + 7);
  const long long groups = (final_plain + 2 * t + 13 - 1) / (2 * t + 13);
  const long long mid_reload = (n + 3) * t + 3 * n + 20 + final_plain - (t + 6) * groups;
  const long long blocking = (n + 3) * t + 19 + final_plain - (t + 6) * groups - 1;
  if (blocking < 1) throw Error(ErrorCode::kNot3Partition, "blocking infrastructure would be empty");
  const long long lim_start = checked_add(l, 3 * t + 19 + 3 * n);
  const long long final_reload = 2 * t + 12;
  const long long mids = 3 * n + 1;

  auto build = [&](Sink& sink) {
    sink.vertex("s", 0);
    sink.vertex("t", 0);
    sink.chain("lim_", l, lim_start, 1);
    sink.edge("s", "lim_1");
    for (long long i = 1; i <= mids; ++i) {
      sink.vertex("mid_" + std::to_string(i), mid_reload);
      sink.edge(i == 1 ? "lim_" + std::to_string(l) : "mid_" + std::to_string(i - 1),
                "mid_" + std::to_string(i));
    }
    for (long long j = 1; j <= 3 * n; ++j) {
      const std::string p = "y" + std::to_string(j) + "_";
      const long long sz = sizes[j - 1];
      sink.vertex(p + "guard", sz + 1);
      sink.edge("mid_" + std::to_string(j), p + "guard");
      sink.chain(p + "store_", sz + 1, 0, 0);
      sink.edge(p + "guard", p + "store_1");
    }
    const std::string last_mid = "mid_" + std::to_string(mids);
    sink.chain("fin_trap_", t + 6, final_reload, 0);
    sink.edge(last_mid, "fin_trap_1");
    sink.chain("fin_store_", final_plain, 0, 0);
    sink.edge("fin_trap_" + std::to_string(t + 6), "fin_store_1");
    sink.chain("block_", blocking, blocking, 1);
    sink.edge(last_mid, "block_1");
    sink.edge("block_" + std::to_string(blocking), "t");
  };

  long long element_vertices = 0;
  for (long long s : sizes) element_vertices += s + 2;
  const long long vertices = checked_add(
      checked_add(2 + l + mids + element_vertices, t + 6), checked_add(final_plain, blocking));
  const long long traps = checked_add(l + mids + 3 * n + t + 6, blocking);
  const long long assets = checked_mul(n + 1, checked_add(l, 3 * t + 20 + 3 * n));

  auto reload_of = [](std::string name) {
    return [name](const Measure& m) { return m.reload(name).value_or(-1); };
  };
  long long stores = 0;
  for (long long s : sizes) stores += s + 1;
  std::vector<Expectation> expectations = {
      {"vertices", {vertices, [](const Measure& m) { return m.vertices(); }}},
      {"edges", {vertices - 1, [](const Measure& m) { return m.edges(); }}},
      {"traps", {traps, [](const Measure& m) { return m.traps(); }}},
      {"tree", {1, [](const Measure& m) { return m.is_tree() ? 1LL : 0LL; }}},
      {"max degree", {3, [](const Measure& m) { return m.max_degree(); }}},
      {"limiting length", {l, [](const Measure& m) { return m.count("lim_"); }}},
      {"limiting start reload", {lim_start, reload_of("lim_1")}},
      {"limiting end reload", {3 * t + 20 + 3 * n, reload_of("lim_" + std::to_string(l))}},
      {"mid vertices", {mids, [](const Measure& m) { return m.count("mid_"); }}},
      {"mid vertices with mid reload", {mids, [mid_reload](const Measure& m) { return m.count("mid_", mid_reload); }}},
      {"mid reload", {mid_reload, reload_of("mid_1")}},
      {"element guards", {3 * n, [](const Measure& m) { return m.count("y") - m.count("y", 0); }}},
      {"element storage", {stores, [](const Measure& m) { return m.count("y", 0); }}},
      {"final traps", {t + 6, [](const Measure& m) { return m.count("fin_trap_"); }}},
      {"final traps with reload 2T+12", {t + 6, [final_reload](const Measure& m) { return m.count("fin_trap_", final_reload); }}},
      {"final trap reload", {final_reload, reload_of("fin_trap_1")}},
      {"final storage", {final_plain, [](const Measure& m) { return m.count("fin_store_"); }}},
      {"blocking length", {blocking, [](const Measure& m) { return m.count("block_"); }}},
      {"blocking start reload", {blocking, reload_of("block_1")}},
      {"blocking end reload", {1, reload_of("block_" + std::to_string(blocking))}},
  };

  std::string provenance = "3-Partition with n=" + std::to_string(n) + ", T=" + std::to_string(t) +
                           ", sizes " + join(sizes);
  if (options.relax_bounds) provenance += ", inclusive size bounds";
  if (!faithful) provenance += ", NON-FAITHFUL: limiting constant " + std::to_string(faithful_l) +
                               " scaled to " + std::to_string(l);
  return finish(build, expectations, assets, 1, options, provenance, faithful);
}

namespace {

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling; std::uniform_int_distribution is not specified
  // bit-for-bit across standard libraries.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Instance gen_random(const RandomSpec& params) {
  if (params.vertices < 2) throw Error(ErrorCode::kInvalidParameter, "need at least 2 vertices");
  if (params.vertices > 100000) throw Error(ErrorCode::kInvalidParameter, "too many vertices");
  if (!(params.trap_density >= 0.0 && params.trap_density <= 1.0))
    throw Error(ErrorCode::kInvalidParameter, "trap density must lie in [0, 1]");
  if (params.reload_max < 1) throw Error(ErrorCode::kInvalidParameter, "reload max must be at least 1");
  if (params.assets < 1) throw Error(ErrorCode::kInvalidParameter, "need at least one asset");

  std::mt19937_64 rng(params.seed);
  RawInstance raw;
  raw.start = "s";
  raw.target = "t";
  raw.assets = params.assets;
  raw.goal = 1;
  raw.vertices = {"s", "t"};

  const int inner = params.vertices - 2;
  if (inner == 0) {
    raw.edges.emplace_back("s", "t");
    return build_instance(raw);
  }

  std::vector<std::string> names;
  for (int i = 1; i <= inner; ++i) names.push_back("v" + std::to_string(i));
  std::vector<std::string> order = names;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw_below(rng, i)]);

  std::set<std::pair<std::string, std::string>> edges;
  auto add = [&](const std::string& a, const std::string& b) {
    return edges.insert(std::minmax(a, b)).second;
  };
  add("s", order[0]);
  for (std::size_t i = 1; i < order.size(); ++i) add(order[i], order[draw_below(rng, i)]);
  add("t", order[draw_below(rng, order.size())]);

  // A few chords among s and the inner vertices.
  std::vector<std::string> pool = names;
  pool.push_back("s");
  const std::uint64_t extra = draw_below(rng, static_cast<std::uint64_t>(inner) + 1);
  for (std::uint64_t k = 0; k < extra; ++k) {
    const std::string& a = pool[draw_below(rng, pool.size())];
    const std::string& b = pool[draw_below(rng, pool.size())];
    if (a != b) add(a, b);
  }

  for (const auto& v : names) {
    const bool trap = draw_unit(rng) < params.trap_density;
    const long long reload = 1 + static_cast<long long>(draw_below(rng, params.reload_max));
    if (trap) raw.traps.emplace_back(v, reload);
  }
  raw.vertices.insert(raw.vertices.end(), names.begin(), names.end());
  raw.edges.assign(edges.begin(), edges.end());
  return build_instance(raw);
}

}  // namespace rplan
