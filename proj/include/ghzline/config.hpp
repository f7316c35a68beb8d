#pragma once

// JSON segment configuration. See config/trio_config.schema.json for the
// schema and config/q_net_segments.json for a complete example.
//
//   {
//     "defaults": { "source": {...}, "memory": {...}, "speed_of_light_km_s": 2e5 },
//     "segments": [
//       { "name": "...",
//         "nodes": { "A": {...}, "B": {...}, "C": {...} },
//         "links": { "AB": {...}, "BC": {...} },
//         "source": {...}, "memory": {...} }      // optional overrides
//     ]
//   }
//
// A link gives "transmission" or "loss_db" (or both, which must agree to
// 1e-9; loss_db then wins). "memory": null in a segment disables the
// default memory for it.

#include <filesystem>
#include <string_view>
#include <vector>

#include "ghzline/netmodel.hpp"

namespace ghzline::config {

/// Parses configuration text. Syntax errors are reported with line and
/// column; all field and invariant problems are collected and thrown
/// together as netmodel::ConfigError.
std::vector<netmodel::TrioConfig> parse_config(std::string_view text, std::string_view source_name = "<config>");

std::vector<netmodel::TrioConfig> load_config(const std::filesystem::path& path);

/// Looks a segment up by exact name, or by unique case-insensitive prefix.
const netmodel::TrioConfig& find_segment(const std::vector<netmodel::TrioConfig>& configs, std::string_view name);

}  // namespace ghzline::config
