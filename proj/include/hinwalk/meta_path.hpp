#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hinwalk/hin.hpp"

namespace hinwalk {

struct MetaPathStep {
  std::string relation;
  bool inverted = false;
  friend bool operator==(const MetaPathStep&, const MetaPathStep&) = default;
};

/// A schema-validated sequence of (possibly inverted) relations, composing
/// from a source object group to a target object group.
struct MetaPath {
  std::vector<MetaPathStep> steps;
  std::string source_group;
  std::string target_group;
};

/// Resolves source/target groups and checks that consecutive steps compose.
/// Throws Error naming the first non-composing step (1-based).
MetaPath validate_meta_path(const Hin& hin, std::vector<MetaPathStep> steps);

/// Text form: steps separated by whitespace or commas, '~' prefix inverts,
/// e.g. "~Lo likes Ty".
std::vector<MetaPathStep> parse_steps(std::string_view text);

std::string to_string(const MetaPath& path);

}  // namespace hinwalk
