#include "rplan/analysis.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace rplan {

std::string_view topology_tag_name(TopologyTag tag) {
  switch (tag) {
    case TopologyTag::kTriviallyNo: return "trivially-no";
    case TopologyTag::kTriviallyYes: return "trivially-yes";
    case TopologyTag::kPath: return "path";
    case TopologyTag::kStar: return "star";
    case TopologyTag::kDisjointPaths: return "disjoint-paths";
    case TopologyTag::kCondensedLinear: return "condensed-linear";
    case TopologyTag::kGeneral: return "general";
  }
  return "?";
}

int CondensedTopology::node_of(VertexId v) const {
  const int c = component_of.at(v);
  if (c >= 0) return static_cast<int>(retained.size()) + c;
  auto it = std::lower_bound(retained.begin(), retained.end(), v);
  return static_cast<int>(it - retained.begin());
}

std::size_t CondensedTopology::edge_count() const {
  std::size_t sum = 0;
  for (const auto& row : adjacency) sum += row.size();
  return sum / 2;
}

std::string CondensedTopology::node_label(const Instance& instance, int node) const {
  if (!is_supernode(node)) return instance.topology().name(retained.at(node));
  std::string out = "{";
  const auto& members = components.at(node - retained.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ',';
    out += instance.topology().name(members[i]);
  }
  return out + "}";
}

namespace {

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int source,
                               const std::vector<char>& allowed) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adj[u]) {
      if (dist[w] >= 0 || !allowed[w]) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::vector<std::vector<int>> adjacency_of(const Topology& g) {
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbors(static_cast<VertexId>(v));
    adj[v].assign(nb.begin(), nb.end());
  }
  return adj;
}

bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

// Checks that removing s and t leaves vertex-disjoint paths, each running
// from a neighbour of s to a neighbour of t with no other contact to s or t.
// Routes come back oriented from the s side, ordered by smallest member.
std::optional<std::vector<std::vector<int>>> disjoint_routes(
    const std::vector<std::vector<int>>& adj, int s, int t, std::string& why) {
  const int n = static_cast<int>(adj.size());
  if (contains(adj[s], t)) {
    why = "s and t are adjacent";
    return std::nullopt;
  }
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> routes;
  for (int root = 0; root < n; ++root) {
    if (root == s || root == t || seen[root]) continue;
    std::vector<int> comp;
    std::deque<int> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (int w : adj[u]) {
        if (w == s || w == t || seen[w]) continue;
        seen[w] = 1;
        queue.push_back(w);
      }
    }
    std::size_t inner_degree_sum = 0;
    std::vector<int> ends;
    for (int u : comp) {
      int deg = 0;
      for (int w : adj[u]) deg += (w != s && w != t);
      if (deg > 2) {
        why = "vertex of degree " + std::to_string(deg) + " outside s,t";
        return std::nullopt;
      }
      if (deg <= 1) ends.push_back(u);
      inner_degree_sum += deg;
    }
    if (inner_degree_sum / 2 != comp.size() - 1) {
      why = "cycle outside s,t";
      return std::nullopt;
    }
    std::sort(ends.begin(), ends.end());
    for (int u : comp) {
      const bool end = std::find(ends.begin(), ends.end(), u) != ends.end();
      if (!end && (contains(adj[u], s) || contains(adj[u], t))) {
        why = "route interior touches s or t";
        return std::nullopt;
      }
    }
    std::vector<int> route;
    if (comp.size() == 1) {
      if (!contains(adj[root], s) || !contains(adj[root], t)) {
        why = "dangling component";
        return std::nullopt;
      }
      route.push_back(root);
    } else {
      int a = ends.at(0), b = ends.at(1);
      auto to_s = [&](int u) { return contains(adj[u], s); };
      auto to_t = [&](int u) { return contains(adj[u], t); };
      if (to_s(b) && !to_t(b) && to_t(a) && !to_s(a)) std::swap(a, b);
      if (!(to_s(a) && !to_t(a) && to_t(b) && !to_s(b))) {
        why = "route ends do not join s and t";
        return std::nullopt;
      }
      int prev = -1, cur = a;
      while (true) {
        route.push_back(cur);
        int next = -1;
        for (int w : adj[cur])
          if (w != s && w != t && w != prev) next = w;
        if (next < 0) break;
        prev = cur;
        cur = next;
      }
    }
    routes.push_back(std::move(route));
  }
  if (routes.empty()) {
    why = "no inner vertices";
    return std::nullopt;
  }
  return routes;
}

// "1 trap", "3 traps".
std::string count_label(std::size_t n, const std::string& noun) {
  if (n == 1) return "1 " + noun;
  if (noun == "vertex") return std::to_string(n) + " vertices";
  if (noun == "leaf") return std::to_string(n) + " leaves";
  return std::to_string(n) + " " + noun + "s";
}

}  // namespace

std::vector<VertexId> trap_free_path(const Instance& instance) {
  const Topology& g = instance.topology();
  const auto adj = adjacency_of(g);
  std::vector<char> allowed(g.vertex_count(), 1);
  for (VertexId r : instance.traps().traps()) allowed[r] = 0;
  std::vector<int> parent(g.vertex_count(), -2);
  std::deque<int> queue{g.start()};
  parent[g.start()] = -1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == g.target()) break;
    for (int w : adj[u]) {
      if (parent[w] != -2 || !allowed[w]) continue;
      parent[w] = u;
      queue.push_back(w);
    }
  }
  if (parent[g.target()] == -2) return {};
  std::vector<VertexId> path;
  for (int v = g.target(); v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

Plan stream_plan(const Instance& instance, const std::vector<VertexId>& path) {
  const int m = instance.assets();
  const int d = static_cast<int>(path.size()) - 1;
  const int length = m - 1 + d;
  IndexedPlan plan;
  plan.rows.assign(m, std::vector<VertexId>(length + 1));
  for (int a = 0; a < m; ++a)
    for (int j = 0; j <= length; ++j) plan.rows[a][j] = path[std::clamp(j - a, 0, d)];
  return name_plan(instance, plan);
}

Instance induced_instance(const Instance& instance, const std::vector<VertexId>& keep) {
  const Topology& g = instance.topology();
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : keep) in[v] = 1;
  RawInstance raw;
  raw.explicit_vertices = true;
  for (VertexId v : keep) raw.vertices.push_back(g.name(v));
  for (auto [u, w] : g.edges())
    if (in[u] && in[w]) raw.edges.emplace_back(g.name(u), g.name(w));
  for (VertexId r : instance.traps().traps())
    if (in[r]) raw.traps.emplace_back(g.name(r), instance.traps().reload(r));
  raw.start = g.name(g.start());
  raw.target = g.name(g.target());
  raw.assets = instance.assets();
  raw.goal = instance.goal();
  return build_instance(raw);
}

PreprocessResult preprocess(const Instance& instance) {
  const Topology& g = instance.topology();
  const auto adj = adjacency_of(g);
  const std::vector<char> all(g.vertex_count(), 1);
  const auto dist = bfs_distances(adj, g.start(), all);

  PreprocessResult out{std::nullopt, instance, false, std::nullopt};
  if (dist[g.target()] < 0) {
    TopologyClass verdict;
    verdict.tag = TopologyTag::kTriviallyNo;
    verdict.evidence.push_back("t is unreachable from s");
    out.verdict = std::move(verdict);
    return out;
  }
  auto path = trap_free_path(instance);
  if (!path.empty()) {
    TopologyClass verdict;
    verdict.tag = TopologyTag::kTriviallyYes;
    verdict.evidence.push_back("trap-free s-t path of " + count_label(path.size() - 1, "edge"));
    out.witness = stream_plan(instance, path);
    verdict.routes.push_back(std::move(path));
    out.verdict = std::move(verdict);
    return out;
  }
  std::vector<VertexId> keep;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (dist[v] >= 0) keep.push_back(static_cast<VertexId>(v));
  if (keep.size() < g.vertex_count()) {
    out.instance = induced_instance(instance, keep);
    out.restricted = true;
  }
  return out;
}

CondensedTopology condense(const Instance& instance) {
  const Topology& g = instance.topology();
  const TrapTable& traps = instance.traps();
  const std::size_t n = g.vertex_count();
  CondensedTopology c;
  c.component_of.assign(n, -1);
  auto plain = [&](VertexId v) { return !g.is_terminal(v) && !traps.is_trap(v); };
  for (std::size_t v = 0; v < n; ++v)
    if (!plain(static_cast<VertexId>(v))) c.retained.push_back(static_cast<VertexId>(v));
  for (std::size_t v = 0; v < n; ++v) {
    if (!plain(static_cast<VertexId>(v)) || c.component_of[v] >= 0) continue;
    const int id = static_cast<int>(c.components.size());
    std::vector<VertexId> members;
    std::deque<VertexId> queue{static_cast<VertexId>(v)};
    c.component_of[v] = id;
    while (!queue.empty()) {
      const VertexId u = queue.front();
      queue.pop_front();
      members.push_back(u);
      for (VertexId w : g.neighbors(u)) {
        if (!plain(w) || c.component_of[w] >= 0) continue;
        c.component_of[w] = id;
        queue.push_back(w);
      }
    }
    std::sort(members.begin(), members.end());
    c.components.push_back(std::move(members));
  }
  c.adjacency.assign(c.retained.size() + c.components.size(), {});
  for (auto [u, w] : g.edges()) {
    const int a = c.node_of(u), b = c.node_of(w);
    if (a == b) continue;
    c.adjacency[a].push_back(b);
    c.adjacency[b].push_back(a);
  }
  for (auto& row : c.adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return c;
}

namespace {

bool traps_have_degree_two(const Instance& instance, std::string& why) {
  for (VertexId r : instance.traps().traps()) {
    if (instance.topology().degree(r) != 2) {
      why = "trap " + instance.topology().name(r) + " has degree " +
            std::to_string(instance.topology().degree(r));
      return false;
    }
  }
  return true;
}

std::optional<std::vector<std::vector<int>>> condensed_routes(const Instance& instance,
                                                              const CondensedTopology& c,
                                                              std::string& why) {
  if (!traps_have_degree_two(instance, why)) return std::nullopt;
  return disjoint_routes(c.adjacency, c.node_of(instance.start()), c.node_of(instance.target()),
                         why);
}

}  // namespace

std::optional<std::vector<VertexId>> path_route(const Instance& instance) {
  const Topology& g = instance.topology();
  const std::size_t n = g.vertex_count();
  const VertexId s = g.start(), t = g.target();
  if (g.edge_count() + 1 != n || g.degree(s) != 1 || g.degree(t) != 1) return std::nullopt;
  for (std::size_t v = 0; v < n; ++v)
    if (g.degree(static_cast<VertexId>(v)) > 2) return std::nullopt;
  std::vector<VertexId> route;
  VertexId prev = s, cur = g.neighbors(s)[0];
  while (cur != t) {
    route.push_back(cur);
    auto nb = g.neighbors(cur);
    if (nb.size() != 2) return std::nullopt;
    const VertexId next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  // the walk misses vertices when G is disconnected
  if (route.size() + 2 != n) return std::nullopt;
  return route;
}

std::optional<VertexId> star_center(const Instance& instance) {
  const Topology& g = instance.topology();
  const std::size_t n = g.vertex_count();
  if (n < 3 || g.edge_count() + 1 != n) return std::nullopt;
  for (std::size_t v = 0; v < n; ++v) {
    const auto center = static_cast<VertexId>(v);
    if (g.degree(center) == n - 1 && !g.is_terminal(center) && instance.traps().is_trap(center))
      return center;
  }
  return std::nullopt;
}

std::optional<std::vector<std::vector<VertexId>>> disjoint_path_routes(const Instance& instance,
                                                                      std::string* why) {
  const Topology& g = instance.topology();
  std::string reason;
  auto routes = disjoint_routes(adjacency_of(g), g.start(), g.target(), reason);
  if (why) *why = reason;
  return routes;
}

std::optional<std::vector<std::vector<int>>> condensed_linear_routes(
    const Instance& instance, const CondensedTopology& condensed, std::string* why) {
  std::string reason;
  auto routes = condensed_routes(instance, condensed, reason);
  if (why) *why = reason;
  return routes;
}

TopologyClass classify(const Instance& instance) {
  const Topology& g = instance.topology();
  const TrapTable& traps = instance.traps();
  const std::size_t n = g.vertex_count();
  TopologyClass out;

  auto pre = preprocess(instance);
  if (pre.verdict) return *pre.verdict;

  if (auto route = path_route(instance)) {
    out.tag = TopologyTag::kPath;
    out.evidence.push_back("path: " + count_label(n, "vertex") + ", " +
                           count_label(traps.count(), "trap"));
    out.routes.push_back(std::move(*route));
    return out;
  }

  // A 3-vertex star is a path and was taken above.
  if (auto center = star_center(instance)) {
    out.tag = TopologyTag::kStar;
    out.evidence.push_back("star: centre " + g.name(*center) + " reload " +
                           std::to_string(traps.reload(*center)) + ", " +
                           count_label(n - 1, "leaf"));
    out.routes.push_back({*center});
    return out;
  }

  std::string why_disjoint;
  if (auto routes = disjoint_path_routes(instance, &why_disjoint)) {
    out.tag = TopologyTag::kDisjointPaths;
    std::ostringstream ev;
    ev << "disjoint paths: " << routes->size() << " routes of lengths";
    for (const auto& r : *routes) ev << ' ' << r.size();
    out.evidence.push_back(ev.str());
    out.routes = std::move(*routes);
    return out;
  }

  auto condensed = condense(instance);
  std::string why_condensed;
  if (auto routes = condensed_routes(instance, condensed, why_condensed)) {
    out.tag = TopologyTag::kCondensedLinear;
    out.evidence.push_back("condensed: " + count_label(condensed.supernode_count(), "supernode") +
                           ", " + count_label(routes->size(), "route"));
    out.condensed = std::move(condensed);
    out.condensed_routes = std::move(*routes);
    return out;
  }

  out.tag = TopologyTag::kGeneral;
  out.evidence.push_back("not disjoint paths: " + why_disjoint);
  out.evidence.push_back("not condensed-linear: " + why_condensed);
  return out;
}

Instance linearize(const Instance& instance, const CondensedTopology& condensed) {
  std::string why;
  auto routes = condensed_routes(instance, condensed, why);
  if (!routes) throw Error(ErrorCode::kNotCondensedLinear, "not condensed-linear: " + why);

  const Topology& g = instance.topology();
  const auto adj = adjacency_of(g);
  RawInstance raw;
  raw.explicit_vertices = true;
  for (const auto& route : *routes) {
    std::vector<VertexId> chain{g.start()};
    for (std::size_t i = 0; i < route.size(); ++i) {
      const int node = route[i];
      if (!condensed.is_supernode(node)) {
        chain.push_back(condensed.retained[node]);
        continue;
      }
      const VertexId next =
          i + 1 < route.size() ? condensed.retained.at(route[i + 1]) : g.target();
      const auto& members = condensed.components[node - condensed.retained.size()];
      std::vector<char> allowed(g.vertex_count(), 0);
      for (VertexId v : members) allowed[v] = 1;
      const auto dist = bfs_distances(adj, next, allowed);
      std::vector<VertexId> order = members;
      std::stable_sort(order.begin(), order.end(),
                       [&](VertexId a, VertexId b) { return dist[a] > dist[b]; });
      chain.insert(chain.end(), order.begin(), order.end());
    }
    chain.push_back(g.target());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      raw.edges.emplace_back(g.name(chain[i]), g.name(chain[i + 1]));
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) raw.vertices.push_back(g.name(chain[i]));
  }
  raw.vertices.push_back(g.name(g.start()));
  raw.vertices.push_back(g.name(g.target()));
  for (VertexId r : instance.traps().traps())
    raw.traps.emplace_back(g.name(r), instance.traps().reload(r));
  raw.start = g.name(g.start());
  raw.target = g.name(g.target());
  raw.assets = instance.assets();
  raw.goal = instance.goal();
  return build_instance(raw);
}

}  // namespace rplan
