#pragma once

// Maps a path inside a JSON document back to the source line where the value
// starts. nlohmann::json keeps no positions, so the text is rescanned.

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace relupwa::detail {

using JsonPathStep = std::variant<std::string, std::size_t>;
using JsonPath = std::vector<JsonPathStep>;

/// 1-based line of the value at `path`; the line of the deepest reachable
/// ancestor when the path does not exist.
std::size_t json_line_of(std::string_view text, const JsonPath& path);

/// 1-based line of a byte offset.
std::size_t line_of_offset(std::string_view text, std::size_t offset);

std::string to_string(const JsonPath& path);

}  // namespace relupwa::detail
