#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hinwalk/meta_path.hpp"
#include "hinwalk/walk.hpp"

namespace hinwalk {

/// Shannon entropy in bits, with 0 log 0 = 0. A distribution with lost mass
/// is renormalized over its surviving mass first; an all-zero distribution is
/// degenerate and throws DegenerateDistribution.
double shannon_entropy(const Pmf& pmf);

/// 2^entropy: the size of the uniform distribution with the same entropy.
double perplexity(const Pmf& pmf);

enum class DiversityKind { mean_individual, collective };

struct DiversityReport {
  MetaPath meta_path;
  DiversityKind kind = DiversityKind::mean_individual;
  double value = 0.0;
  std::uint32_t excluded_sources = 0;  // dangling sources skipped (mean-individual)
};

/// Geometric mean over contributing sources of the perplexity of the
/// per-source walk distribution. Sources whose walk loses all mass are
/// excluded and counted; throws DegenerateDistribution if none contribute.
DiversityReport mean_individual_diversity(const Hin& hin, const MetaPath& path, int jobs = 1);

/// Perplexity of the uniformly-started walk distribution.
DiversityReport collective_diversity(const Hin& hin, const MetaPath& path);

/// Mosaic: mean-individual diversity for every (source relation, middle
/// relation, target relation) combination. A source entry of nullopt starts
/// the path directly at the middle relation's source group; otherwise the
/// source relation is traversed inverted.
struct MosaicSpec {
  std::vector<std::optional<std::string>> sources;
  std::vector<std::string> middles;
  std::vector<std::string> targets;
  int jobs = 1;
};

struct MosaicCell {
  std::string source_group;
  std::string middle_relation;
  std::string target_group;
  double value = 0.0;
  std::uint32_t excluded_sources = 0;
};

struct MosaicTable {
  std::vector<MosaicCell> cells;
  std::vector<std::string> warnings;  // skipped non-composing combinations
};

MosaicTable diversity_mosaic(const Hin& hin, const MosaicSpec& spec);

/// Columns: source_group, middle_relation, target_group, measure, value,
/// excluded_sources.
void write_mosaic_csv(const MosaicTable& table, std::ostream& out);

}  // namespace hinwalk
