#pragma once

// JSON group descriptions:
//   {"kind":"cayley","table":[[...],...],"generators":[...]}
//   {"kind":"perm","degree":n,"generators":[[image list],...]}
// Both accept an optional "name". Permutation images are 0-based.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpgrad/finite_group.hpp"

namespace dpgrad {

using Json = nlohmann::ordered_json;

FiniteGroup group_from_json(const Json& j, const Limits& limits = {});
FiniteGroup read_group_file(const std::filesystem::path& path, const Limits& limits = {});

Json group_to_cayley_json(const FiniteGroup& g);
// Right-regular permutation representation of the generators.
Json group_to_perm_json(const FiniteGroup& g);

// Parses `text`, turning byte offsets of syntax errors into line numbers.
Json parse_json_text(const std::string& text);

}  // namespace dpgrad
