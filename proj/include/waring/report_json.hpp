#pragma once

// JSON views of the library's result types and the plain-text input formats
// shared by the command-line tool and the Python module.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "waring/circle.hpp"
#include "waring/local.hpp"
#include "waring/transference.hpp"
#include "waring/zk.hpp"

namespace waring::harness {

using json = nlohmann::json;

std::string to_string(zk::Convention convention);
zk::Convention parse_convention(const std::string& text);

/// Does the published value lie within tol of the enclosure? nullopt when
/// no published value exists for this k.
std::optional<bool> zk_agrees(const zk::ZkEstimate& estimate, double tol = 0.01);

json to_json(const ResidueSet& set);
json to_json(const zk::ZkEstimate& estimate);
json to_json(const local::WaringPairReport& report);
json to_json(const local::MinimalSReport& report);
json to_json(const local::DownsetReport& report);
json to_json(const circle::PseudoReport& report);
json to_json(const transfer::TransferenceReport& report);

/// Whole file as text; throws PreconditionError naming the path on failure.
std::string read_text_file(const std::string& path);

/// Decimal integers, one per line. Blank lines and '#' comments are skipped.
std::vector<u64> parse_integer_list(const std::string& text);

/// Like parse_integer_list, but a blank line ends the current block.
std::vector<std::vector<u64>> parse_integer_blocks(const std::string& text);

}  // namespace waring::harness
