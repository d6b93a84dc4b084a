#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "chemostab/model.hpp"

namespace chemostab {

/// Parses the line-oriented reaction DSL:
///
///     # comment
///     2 v1 <-> v2 @ 1.0, 0.5     reversible: forward, backward rate
///     v1 -> 0 @ 1.0              decay ('0' is the empty complex)
///
/// Species are indexed in order of first appearance. A reversible statement
/// yields two reactions (forward first). Throws ParseError.
ReactionNetwork parse_crn(std::string_view text);

/// Writes `net` back to the DSL, one irreversible reaction per line. The
/// output reparses to an identical network.
std::string serialize_crn(const ReactionNetwork& net);

/// Parses a .model document (JSON object) into a validated ModelSpec.
/// A `crn` value naming a .crn file is resolved against `base_dir`.
/// Throws ParseError for malformed documents and ValidationError for
/// invariant violations.
ModelSpec parse_model(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a .model file.
ModelSpec load_model(const std::filesystem::path& path);

}  // namespace chemostab
