#pragma once

// Plain exhaustive search written directly from the model rules, with no
// code shared with the library's engine or oracle. Used as the independent
// reference in differential tests.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rplan/core.hpp"

namespace reference {

struct Graph {
  int n = 0;
  int s = 0;
  int t = 0;
  std::vector<std::vector<int>> adj;
  std::vector<int> reload;  // 0 = no trap
};

inline Graph from_instance(const rplan::Instance& instance) {
  Graph g;
  const auto& topo = instance.topology();
  g.n = static_cast<int>(topo.vertex_count());
  g.s = topo.start();
  g.t = topo.target();
  g.adj.resize(g.n);
  g.reload.assign(g.n, 0);
  for (auto [u, w] : topo.edges()) {
    g.adj[u].push_back(w);
    g.adj[w].push_back(u);
  }
  for (int v = 0; v < g.n; ++v) {
    std::sort(g.adj[v].begin(), g.adj[v].end());
    if (instance.traps().is_trap(v)) g.reload[v] = instance.traps().reload(v);
  }
  return g;
}

// State after some round. occ[v] is 1 for an asset, 2 for an asset that
// triggered the trap on v in this round. since[v] = rounds since the last
// trigger, capped at reload+1 (also the value for "never").
struct State {
  int at_s = 0;
  int at_t = 0;
  int dead = 0;
  std::vector<int> occ;
  std::vector<int> since;

  bool operator<(const State& o) const {
    return std::tie(at_s, at_t, dead, occ, since) < std::tie(o.at_s, o.at_t, o.dead, o.occ, o.since);
  }
};

// Successors of a state under one round of movement.
inline std::vector<State> successors(const Graph& g, const State& cur) {
  std::vector<State> out;
  std::vector<int> movers;  // vertices with a free (non-doomed) asset
  int doomed = 0;
  for (int v = 0; v < g.n; ++v) {
    if (cur.occ[v] == 1) movers.push_back(v);
    if (cur.occ[v] == 2) ++doomed;
  }
  std::vector<int> s_targets;
  for (int w : g.adj[g.s]) s_targets.push_back(w);

  std::vector<int> dest(movers.size());
  std::function<void(std::size_t)> choose_movers;
  std::function<void(std::size_t, int, std::vector<int>&)> choose_departures;

  auto finish = [&](const std::vector<int>& departures) {
    State next;
    next.occ.assign(g.n, 0);
    next.since = cur.since;
    next.at_s = cur.at_s - static_cast<int>(departures.size());
    next.at_t = cur.at_t;
    next.dead = cur.dead + doomed;
    bool moved = doomed > 0 || !departures.empty();
    std::vector<int> landing;
    for (std::size_t i = 0; i < movers.size(); ++i) {
      if (dest[i] != movers[i]) moved = true;
      landing.push_back(dest[i]);
    }
    for (int d : departures) landing.push_back(d);
    if (!moved) return;
    for (int d : landing) {
      if (d == g.t) {
        ++next.at_t;
        continue;
      }
      if (next.occ[d]) return;  // two assets on one inner vertex
      next.occ[d] = 1;
    }
    for (int v = 0; v < g.n; ++v) {
      if (!g.reload[v]) continue;
      next.since[v] = std::min(next.since[v] + 1, g.reload[v] + 1);
      if (next.occ[v] && next.since[v] > g.reload[v]) {
        next.since[v] = 0;
        next.occ[v] = 2;
      }
    }
    out.push_back(next);
  };

  choose_departures = [&](std::size_t k, int left, std::vector<int>& picked) {
    if (k == s_targets.size()) {
      finish(picked);
      return;
    }
    choose_departures(k + 1, left, picked);
    if (left > 0) {
      picked.push_back(s_targets[k]);
      choose_departures(k + 1, left - 1, picked);
      picked.pop_back();
    }
  };

  choose_movers = [&](std::size_t i) {
    if (i == movers.size()) {
      std::vector<int> picked;
      choose_departures(0, cur.at_s, picked);
      return;
    }
    dest[i] = movers[i];
    choose_movers(i + 1);
    for (int w : g.adj[movers[i]]) {
      if (w == g.s) continue;
      dest[i] = w;
      choose_movers(i + 1);
    }
  };
  choose_movers(0);
  return out;
}

// Largest number of assets that can end at t, or -1 when no valid plan
// exists at all.
inline int optimum(const rplan::Instance& instance) {
  const Graph g = from_instance(instance);
  State start;
  start.at_s = instance.assets();
  start.occ.assign(g.n, 0);
  start.since.assign(g.n, 0);
  for (int v = 0; v < g.n; ++v) start.since[v] = g.reload[v] + 1;

  std::set<State> seen{start};
  std::vector<State> stack{start};
  int best = -1;
  while (!stack.empty()) {
    State cur = stack.back();
    stack.pop_back();
    const bool done =
        cur.at_s == 0 && std::all_of(cur.occ.begin(), cur.occ.end(), [](int x) { return x == 0; });
    if (done) {
      best = std::max(best, cur.at_t);
      continue;
    }
    for (State& next : successors(g, cur)) {
      if (seen.insert(next).second) stack.push_back(std::move(next));
    }
  }
  return best;
}

}  // namespace reference
