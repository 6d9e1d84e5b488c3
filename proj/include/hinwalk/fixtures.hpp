#pragma once

#include <cstdint>
#include <filesystem>

namespace hinwalk::fixtures {

/// Writes a synthetic dataset in the MovieLens 100K on-disk layout (u.data,
/// u.item, u.user, u.genre, u.occupation). The generated data reproduces the
/// reference cardinalities exactly: 943 users, 1682 movie rows of which 1664
/// carry at least one rating, 19 genre flags totalling 2863 over rated
/// movies, 72 release years, 21 occupations, 61 ages, 2 genders, 795 zip
/// codes, 99965 ratings of which 82495 are >= 3. Tastes follow latent genre
/// clusters and a popularity skew; zip codes are assigned independently of
/// taste.
void write_ml100k(const std::filesystem::path& directory, std::uint64_t seed = 1234);

/// Writes a small synthetic dataset shaped like the Douban Movie tables:
/// eight tab-separated relation tables (Ac, Di, Ty, Gr, Lo, rates, Fr,
/// likes) plus a dataset.json manifest for the generic loader.
void write_dm(const std::filesystem::path& directory, std::uint64_t seed = 1234);

}  // namespace hinwalk::fixtures
