#pragma once

#include <string>
#include <vector>

#include "rplan/core.hpp"
#include "rplan/formats.hpp"

namespace fixtures {

inline const char* kExample1 =
    "assets 2\n"
    "goal 1\n"
    "start s\n"
    "target t\n"
    "trap v3 1\n"
    "edge s v2\n"
    "edge v2 v3\n"
    "edge v3 v4\n"
    "edge v4 t\n";

// Asset 0 is blue, asset 1 red.
inline const char* kExample2 =
    "plan 2 5\n"
    "row 0 s v2 v3 DEAD DEAD DEAD\n"
    "row 1 s s v2 v3 v4 t\n";

inline rplan::Instance example1() { return rplan::parse_instance(kExample1); }
inline rplan::Plan example2() { return rplan::parse_plan(kExample2); }

inline std::string detour_text(bool with_side) {
  std::string text =
      "assets 8\ngoal 1\nstart s\ntarget t\n"
      "trap v2 1\ntrap v4 2\ntrap v5 2\n"
      "edge s v2\nedge v2 v3\nedge v3 v4\nedge v4 v5\nedge v5 t\n";
  if (with_side) text += "trap side 2\nedge v3 side\n";
  return text;
}

inline rplan::Instance detour() { return rplan::parse_instance(detour_text(true)); }
inline rplan::Instance detour_bottom() { return rplan::parse_instance(detour_text(false)); }

// s - p1 - ... - pk - t; reloads[i] == 0 makes p(i+1) a plain vertex.
inline rplan::Instance path(const std::vector<int>& reloads, int assets, int goal = 1) {
  std::string text = "assets " + std::to_string(assets) + "\ngoal " + std::to_string(goal) +
                     "\nstart s\ntarget t\n";
  std::string prev = "s";
  for (std::size_t i = 0; i < reloads.size(); ++i) {
    const std::string v = "p" + std::to_string(i + 1);
    if (reloads[i] > 0) text += "trap " + v + " " + std::to_string(reloads[i]) + "\n";
    text += "edge " + prev + " " + v + "\n";
    prev = v;
  }
  text += "edge " + prev + " t\n";
  return rplan::parse_instance(text);
}

// Centre trap r with leaves s, t and `extra` further leaves.
inline rplan::Instance star(int assets, int reload, int extra = 0) {
  std::string text = "assets " + std::to_string(assets) + "\ngoal 1\nstart s\ntarget t\n";
  text += "trap r " + std::to_string(reload) + "\nedge s r\nedge r t\n";
  for (int i = 1; i <= extra; ++i) text += "edge r x" + std::to_string(i) + "\n";
  return rplan::parse_instance(text);
}

// Two internally disjoint s-t routes; reloads as in path(), prefixes a and b.
inline rplan::Instance two_paths(const std::vector<int>& upper, const std::vector<int>& lower, int assets) {
  std::string text = "assets " + std::to_string(assets) + "\ngoal 1\nstart s\ntarget t\n";
  auto route = [&](const std::vector<int>& reloads, const std::string& p) {
    std::string prev = "s";
    for (std::size_t i = 0; i < reloads.size(); ++i) {
      const std::string v = p + std::to_string(i + 1);
      if (reloads[i] > 0) text += "trap " + v + " " + std::to_string(reloads[i]) + "\n";
      text += "edge " + prev + " " + v + "\n";
      prev = v;
    }
    text += "edge " + prev + " t\n";
  };
  route(upper, "a");
  route(lower, "b");
  return rplan::parse_instance(text);
}

// s - triangle {a,b,c} - trap r - t, with s on a and r on c.
inline rplan::Instance triangle(int assets, int reload) {
  return rplan::parse_instance("assets " + std::to_string(assets) +
                               "\ngoal 1\nstart s\ntarget t\ntrap r " + std::to_string(reload) +
                               "\nedge s a\nedge a b\nedge b c\nedge a c\nedge c r\nedge r t\n");
}

}  // namespace fixtures
