#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hinwalk/meta_path.hpp"
#include "hinwalk/walk.hpp"

namespace hinwalk {

/// Convex mixture of meta-paths sharing one source group (users) and one
/// target group (items). Weights are non-negative and sum to 1.
struct WeightedPath {
  MetaPath path;
  double weight = 0.0;
};

struct MixedPathSpec {
  std::vector<WeightedPath> paths;
};

/// Throws unless weights are valid and all paths share S and T.
void validate_mixed_spec(const MixedPathSpec& spec);

struct ScoredItem {
  NodeIndex item = 0;
  double score = 0.0;
  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// Per-user ranked recommendation lists. A list may be shorter than the
/// requested size when fewer eligible items have positive score.
struct RecommendationSet {
  std::string user_group;
  std::string item_group;
  std::uint32_t list_size = 0;
  std::vector<std::vector<ScoredItem>> lists;  // indexed by user
  std::string provenance;

  LinkGroup to_link_group(std::string name) const;
  /// Columns: user, rank, item, score. Rank is 1-based.
  void write_csv(const Hin& hin, std::ostream& out) const;
  /// Truncated copy (same ordering, lists cut to n).
  RecommendationSet truncated(std::uint32_t n) const;
};

/// Weighted sum of per-path walk distributions for one user; the result is a
/// subdistribution over items (total <= 1, equality iff no path loses mass).
std::vector<double> spread_scores(const Hin& hin, const MixedPathSpec& spec, NodeIndex user);
std::vector<double> spread_scores(const Hin& hin, const MixedPathSpec& spec,
                                  std::string_view user_label);

/// Top-n eligible items by score. Excluded items and zero-score items are
/// never recommended. Deterministic: score descending, then item index
/// ascending.
std::vector<ScoredItem> recommend_top_n(std::span<const double> scores,
                                        std::span<const NodeIndex> exclusions, std::uint32_t n);

struct TwoPathOptions {
  std::string likes_relation = "likes";
  std::string rates_relation = "rates";
  bool exclude_rated = false;  // default: exclude only the user's liked items
  int jobs = 1;
};

/// The two-path mixture recommender: user-content path [X ~X likes] weighted
/// (1 - alpha), item-content path [likes Y ~Y] weighted alpha.
RecommendationSet two_path_recommend(const Hin& hin, std::string_view x_relation,
                                     std::string_view y_relation, double alpha, std::uint32_t n,
                                     const TwoPathOptions& opts = {});

struct BaselineOptions {
  std::string likes_relation = "likes";
  /// Items to drop from a user's list. Empty means: the rates relation when
  /// the network has one, otherwise the likes relation.
  std::string exclusion_relation;
  /// Fill lists that the neighbor vote leaves empty with the popularity
  /// ranking instead. Off by default: an empty list stays empty.
  bool popularity_fallback = false;
  int jobs = 1;
};

/// User-based collaborative filtering: cosine similarity on binary like
/// vectors, the k most similar users vote with their similarity.
RecommendationSet ubcf_recommend(const Hin& hin, std::uint32_t n, std::uint32_t k = 50,
                                 const BaselineOptions& opts = {});

/// Implicit pure popularity: every item the user has not rated, ranked by
/// like in-degree (ties toward the lower index).
RecommendationSet ipp_recommend(const Hin& hin, std::uint32_t n,
                                const BaselineOptions& opts = {});

}  // namespace hinwalk
