#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hinwalk/hin.hpp"

namespace hinwalk {

/// How to read one delimiter-separated relation table: one edge per line,
/// labels taken from the named columns, optional integer rating column.
struct RelationTableSpec {
  std::string path;
  char delimiter = '\t';
  std::string source_group;
  std::string target_group;
  std::string relation;
  std::uint32_t source_column = 0;
  std::uint32_t target_column = 1;
  std::optional<std::uint32_t> rating_column;
  bool header = false;
};

/// Parses the standard MovieLens 100K layout (u.data, u.item, u.user).
/// Movies with no ratings are dropped; genre flags expand to one type edge
/// per set flag; user attributes become their own object groups. Object
/// groups: user, movie, type, release, occupation, age_group, gender,
/// location. Relations: rates (with ratings payload), Ty, Ye, Oc, Ag, Ge, Lo.
Hin parse_movielens_100k(const std::filesystem::path& directory);

/// New network with an added link group holding exactly the rating edges
/// with rating >= threshold. The rating relation must carry rating values.
Hin derive_likes(const Hin& hin, std::string_view rating_relation, int threshold,
                 std::string_view likes_name = "likes");

/// Generic loader: object groups are the union of labels seen per group
/// name, in first-appearance order across tables; duplicate edges collapse.
Hin parse_relation_tables(std::span<const RelationTableSpec> specs,
                          std::string_view dataset_id = {});

/// JSON manifest: {"dataset": ..., "relations": [{...spec fields...}]}.
/// Paths are resolved relative to the manifest's directory.
std::vector<RelationTableSpec> load_dataset_manifest(const std::filesystem::path& manifest_path,
                                                     std::string* dataset_id = nullptr);

}  // namespace hinwalk
