#pragma once

#include <string>
#include <string_view>

#include "rplan/core.hpp"

namespace rplan {

// Instance text: one directive per line, `#` starts a comment.
//   assets <m>  goal <k>  start <id>  target <id>
//   trap <id> <reload>  edge <id> <id>  vertex <id>
// Vertices are declared by mention; `vertex` is only needed for isolated ones.
// Throws SyntaxError for malformed lines, Error for semantic problems.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

// Plan text: `plan <m> <L>` then m lines `row <i> <loc_0> ... <loc_L>`,
// rows numbered from 0, `DEAD` for an eliminated asset.
Plan parse_plan(std::string_view text);
std::string serialize_plan(const Plan& plan);

// Throws Error(kIoError).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

Instance load_instance(const std::string& path);
Plan load_plan(const std::string& path);

}  // namespace rplan
