#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hinwalk/hin.hpp"
#include "hinwalk/recommend.hpp"

namespace hinwalk {

struct SplitSpec {
  double fraction = 0.1;
  std::uint64_t seed = 0;
  std::string likes_relation = "likes";
  /// Also drop the hidden pairs from this relation if present, so exclusion
  /// logic cannot leak test pairs. Ignored when the network lacks it.
  std::string rates_relation = "rates";
};

/// Hidden like edges, the prediction targets.
struct TestSet {
  std::string user_group;
  std::string item_group;
  std::vector<Edge> edges;  // sorted by (user, item)

  std::vector<std::vector<NodeIndex>> by_user(std::uint32_t user_count) const;
};

/// Hides floor(fraction * |likes|) uniformly random like edges. The train
/// network keeps everything else; train and test partition the original
/// likes edge set exactly.
std::pair<Hin, TestSet> split_likes(const Hin& hin, const SplitSpec& spec);

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint32_t evaluated_users = 0;
};

/// Macro average over users with at least one test edge. Per user: precision
/// = hits/|list| (0 for an empty list), recall = hits/|test edges|, f1 their
/// harmonic mean (0 when both are 0). Throws on an empty test set.
Metrics precision_recall_f1(const RecommendationSet& rec, const TestSet& test);

struct ExperimentResult {
  std::string dataset;
  std::string x_relation;
  std::string y_relation;
  double alpha = 0.0;
  std::uint32_t list_size = 0;
  std::uint32_t replicate = 0;  // 0 = original network
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double mi_diversity = 0.0;
  double col_diversity = 0.0;
};

struct GridOptions {
  std::string likes_relation = "likes";
  std::string rates_relation = "rates";
  /// Diversity of recommended items is measured through this item-content
  /// relation (recommendation step, then this step).
  std::string diversity_relation = "Ty";
  bool exclude_rated = false;
  int jobs = 1;
};

/// One row per (alpha, list size), all sharing a single split.
std::vector<ExperimentResult> run_alpha_grid(const Hin& hin, std::string_view x_relation,
                                             std::string_view y_relation,
                                             std::span<const double> alphas,
                                             std::span<const std::uint32_t> list_sizes,
                                             const SplitSpec& split,
                                             const GridOptions& opts = {});

void write_results_csv(std::span<const ExperimentResult> rows, std::ostream& out);

/// Linear-interpolation quantile of already-sorted values, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

struct StudyRow {
  std::string metric;  // f1 | mi_diversity | col_diversity
  double alpha = 0.0;
  std::uint32_t list_size = 0;
  double original = 0.0;
  double q_lo = 0.0;
  double median = 0.0;
  double q_hi = 0.0;
  std::uint32_t replicates = 0;
};

struct ReplicateRecord {
  std::uint32_t index = 0;
  std::uint64_t seed = 0;
  std::string relation;
  double jaccard_to_original = 0.0;
};

struct StudyOptions {
  GridOptions grid;
  double q_lo = 0.1;
  double q_hi = 0.9;
  double swap_factor = 10.0;
};

struct StudyResult {
  std::vector<StudyRow> rows;
  std::vector<ReplicateRecord> replicates;
};

/// Shuffle study: evaluates the grid on the original network and on
/// degree-preserving randomizations of one relation, all against the same
/// split, and reports per-(alpha, size, metric) quantile bands.
StudyResult run_randomization_study(const Hin& hin, std::string_view x_relation,
                                    std::string_view y_relation,
                                    std::string_view shuffle_relation,
                                    std::uint32_t replicate_count,
                                    std::span<const double> alphas,
                                    std::span<const std::uint32_t> list_sizes,
                                    const SplitSpec& split, std::uint64_t shuffle_master_seed,
                                    const StudyOptions& opts = {});

void write_study_csv(const StudyResult& study, std::ostream& out);
void write_replicates_csv(const StudyResult& study, std::ostream& out);

}  // namespace hinwalk
