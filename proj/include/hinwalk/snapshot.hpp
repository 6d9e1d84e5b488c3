#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "hinwalk/hin.hpp"

namespace hinwalk {

/// Binary network snapshot, little-endian throughout:
///   magic "HINSNAP1", u32 version,
///   u32 dataset-id length + bytes,
///   u32 group count, per group: name, u64 node count, labels,
///   u32 relation count, per relation: name, source group, target group,
///     u64 edge count, edges as (u32 src, u32 dst) in canonical order,
///     u8 has_ratings, then one u8 per edge when set.
/// Strings are u32 length + bytes. Equal networks produce equal bytes.
void write_snapshot(const Hin& hin, const std::filesystem::path& path);

Hin read_snapshot(const std::filesystem::path& path);

/// FNV-1a 64 over the file's bytes, as fixed-width hex.
std::string file_fingerprint(const std::filesystem::path& path);

}  // namespace hinwalk
