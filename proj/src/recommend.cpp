#include "hinwalk/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hinwalk/csv.hpp"
#include "hinwalk/parallel.hpp"

namespace hinwalk {

void validate_mixed_spec(const MixedPathSpec& spec) {
  if (spec.paths.empty()) throw Error("mixed path spec has no paths");
  double total = 0.0;
  const std::string& s = spec.paths.front().path.source_group;
  const std::string& t = spec.paths.front().path.target_group;
  for (const WeightedPath& wp : spec.paths) {
    if (wp.weight < 0.0) throw Error("mixed path spec: negative weight");
    if (wp.path.source_group != s || wp.path.target_group != t) {
      throw Error("mixed path spec: paths do not share source/target groups");
    }
    total += wp.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("mixed path spec: weights do not sum to 1");
}

LinkGroup RecommendationSet::to_link_group(std::string name) const {
  std::vector<Edge> edges;
  for (NodeIndex u = 0; u < lists.size(); ++u) {
    for (const ScoredItem& si : lists[u]) edges.push_back({u, si.item});
  }
  return LinkGroup(std::move(name), user_group, item_group, std::move(edges));
}

void RecommendationSet::write_csv(const Hin& hin, std::ostream& out) const {
  const ObjectGroup& users = hin.group(user_group);
  const ObjectGroup& items = hin.group(item_group);
  csv::write_row(out, {"user", "rank", "item", "score"});
  for (NodeIndex u = 0; u < lists.size(); ++u) {
    for (std::size_t r = 0; r < lists[u].size(); ++r) {
      csv::write_row(out, {users.label(u), std::to_string(r + 1),
                           items.label(lists[u][r].item), csv::fmt(lists[u][r].score)});
    }
  }
}

RecommendationSet RecommendationSet::truncated(std::uint32_t n) const {
  RecommendationSet out = *this;
  out.list_size = n;
  for (auto& list : out.lists) {
    if (list.size() > n) list.resize(n);
  }
  return out;
}

std::vector<double> spread_scores(const Hin& hin, const MixedPathSpec& spec, NodeIndex user) {
  validate_mixed_spec(spec);
  std::vector<double> scores;
  for (const WeightedPath& wp : spec.paths) {
    const Pmf pmf = source_distribution(hin, wp.path, user);
    if (scores.empty()) scores.assign(pmf.mass.size(), 0.0);
    for (std::size_t i = 0; i < pmf.mass.size(); ++i) scores[i] += wp.weight * pmf.mass[i];
  }
  return scores;
}

std::vector<double> spread_scores(const Hin& hin, const MixedPathSpec& spec,
                                  std::string_view user_label) {
  validate_mixed_spec(spec);
  const NodeIndex u = hin.group(spec.paths.front().path.source_group).index_of(user_label);
  return spread_scores(hin, spec, u);
}

namespace {

// Top-n by (score desc, index asc) among unmasked positive-score items.
std::vector<ScoredItem> top_n_masked(std::span<const double> scores,
                                     const std::vector<char>& excluded, std::uint32_t n) {
  std::vector<ScoredItem> candidates;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0 && !excluded[i]) {
      candidates.push_back({static_cast<NodeIndex>(i), scores[i]});
    }
  }
  const auto better = [](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item < b.item;
  };
  if (candidates.size() > n) {
    std::nth_element(candidates.begin(), candidates.begin() + n, candidates.end(), better);
    candidates.resize(n);
  }
  std::sort(candidates.begin(), candidates.end(), better);
  return candidates;
}

std::string pick_exclusion_relation(const Hin& hin, const BaselineOptions& opts) {
  if (!opts.exclusion_relation.empty()) return opts.exclusion_relation;
  if (hin.has_relation("rates")) return "rates";
  return opts.likes_relation;
}

}  // namespace

std::vector<ScoredItem> recommend_top_n(std::span<const double> scores,
                                        std::span<const NodeIndex> exclusions, std::uint32_t n) {
  if (n == 0) throw Error("recommendation list size must be at least 1");
  std::vector<char> mask(scores.size(), 0);
  for (NodeIndex i : exclusions) {
    if (i < mask.size()) mask[i] = 1;
  }
  return top_n_masked(scores, mask, n);
}

RecommendationSet two_path_recommend(const Hin& hin, std::string_view x_relation,
                                     std::string_view y_relation, double alpha, std::uint32_t n,
                                     const TwoPathOptions& opts) {
  if (alpha < 0.0 || alpha > 1.0) throw Error("alpha must lie in [0, 1]");
  if (n == 0) throw Error("recommendation list size must be at least 1");
  const LinkGroup& likes = hin.relation(opts.likes_relation);
  const std::string& user_group = likes.source_group();
  const std::string& item_group = likes.target_group();

  const RelationView xv = hin.view(x_relation);
  if (xv.source_group() != user_group) {
    throw Error("relation '" + std::string(x_relation) + "' is not user-content");
  }
  const RelationView yv = hin.view(y_relation);
  if (yv.source_group() != item_group) {
    throw Error("relation '" + std::string(y_relation) + "' is not item-content");
  }

  const MetaPath user_path = validate_meta_path(
      hin, {{std::string(x_relation), false}, {std::string(x_relation), true},
            {opts.likes_relation, false}});
  const MetaPath item_path = validate_meta_path(
      hin, {{opts.likes_relation, false}, {std::string(y_relation), false},
            {std::string(y_relation), true}});

  const OperatorChain user_chain(hin, user_path);
  const OperatorChain item_chain(hin, item_path);
  const std::string exclusion_rel =
      opts.exclude_rated ? opts.rates_relation : opts.likes_relation;
  const Csr& exclusion = hin.frozen(exclusion_rel).out;

  const std::uint32_t users = hin.group(user_group).size();
  const std::uint32_t items = hin.group(item_group).size();

  RecommendationSet rec;
  rec.user_group = user_group;
  rec.item_group = item_group;
  rec.list_size = n;
  rec.lists.resize(users);
  rec.provenance = "two-path x=" + std::string(x_relation) + " y=" + std::string(y_relation) +
                   " alpha=" + csv::fmt(alpha);

  parallel_for(users, opts.jobs, [&](std::size_t u) {
    const auto s = static_cast<NodeIndex>(u);
    std::vector<double> scores(items, 0.0);
    if (alpha < 1.0) {
      const Pmf px = user_chain.from_source(s);
      for (std::uint32_t i = 0; i < items; ++i) scores[i] += (1.0 - alpha) * px.mass[i];
    }
    if (alpha > 0.0) {
      const Pmf py = item_chain.from_source(s);
      for (std::uint32_t i = 0; i < items; ++i) scores[i] += alpha * py.mass[i];
    }
    std::vector<char> mask(items, 0);
    for (NodeIndex i : exclusion.row(s)) mask[i] = 1;
    rec.lists[u] = top_n_masked(scores, mask, n);
  });
  return rec;
}

namespace {

// Items by (like in-degree desc, index asc); the shared spine of IPP and the
// UBCF fallback.
std::vector<NodeIndex> popularity_ranking(const FrozenRelation& likes, std::uint32_t items) {
  std::vector<NodeIndex> ranked(items);
  std::iota(ranked.begin(), ranked.end(), 0);
  std::sort(ranked.begin(), ranked.end(), [&](NodeIndex a, NodeIndex b) {
    const std::uint32_t da = likes.in.degree(a);
    const std::uint32_t db = likes.in.degree(b);
    if (da != db) return da > db;
    return a < b;
  });
  return ranked;
}

void fill_by_popularity(const FrozenRelation& likes, const std::vector<NodeIndex>& ranked,
                        const std::vector<char>& mask, std::uint32_t n,
                        std::vector<ScoredItem>& list) {
  for (NodeIndex item : ranked) {
    if (list.size() == n) break;
    if (mask[item]) continue;
    list.push_back({item, static_cast<double>(likes.in.degree(item))});
  }
}

}  // namespace

RecommendationSet ubcf_recommend(const Hin& hin, std::uint32_t n, std::uint32_t k,
                                 const BaselineOptions& opts) {
  if (n == 0 || k == 0) throw Error("list size and neighborhood size must be at least 1");
  const FrozenRelation& likes = hin.frozen(opts.likes_relation);
  const std::string exclusion_rel = pick_exclusion_relation(hin, opts);
  const Csr& exclusion = hin.frozen(exclusion_rel).out;
  const std::uint32_t users = hin.group(likes.link.source_group()).size();
  const std::uint32_t items = hin.group(likes.link.target_group()).size();
  const std::vector<NodeIndex> ranked =
      opts.popularity_fallback ? popularity_ranking(likes, items) : std::vector<NodeIndex>{};

  RecommendationSet rec;
  rec.user_group = likes.link.source_group();
  rec.item_group = likes.link.target_group();
  rec.list_size = n;
  rec.lists.resize(users);
  rec.provenance = "ubcf k=" + std::to_string(k);

  parallel_for(users, opts.jobs, [&](std::size_t uu) {
    const auto u = static_cast<NodeIndex>(uu);
    const auto mine = likes.out.row(u);
    if (mine.empty()) {
      if (opts.popularity_fallback) {
        std::vector<char> mask(items, 0);
        for (NodeIndex i : exclusion.row(u)) mask[i] = 1;
        fill_by_popularity(likes, ranked, mask, n, rec.lists[uu]);
      }
      return;
    }

    // Co-like counts against every overlapping user via the item index.
    std::vector<std::uint32_t> overlap(users, 0);
    std::vector<NodeIndex> touched;
    for (NodeIndex item : mine) {
      for (NodeIndex v : likes.in.row(item)) {
        if (v == u) continue;
        if (overlap[v]++ == 0) touched.push_back(v);
      }
    }
    struct Neighbor {
      NodeIndex user;
      double sim;
    };
    std::vector<Neighbor> neighbors;
    neighbors.reserve(touched.size());
    const double norm_u = std::sqrt(static_cast<double>(mine.size()));
    for (NodeIndex v : touched) {
      const double norm_v = std::sqrt(static_cast<double>(likes.out.degree(v)));
      neighbors.push_back({v, overlap[v] / (norm_u * norm_v)});
    }
    const auto closer = [](const Neighbor& a, const Neighbor& b) {
      if (a.sim != b.sim) return a.sim > b.sim;
      return a.user < b.user;
    };
    if (neighbors.size() > k) {
      std::nth_element(neighbors.begin(), neighbors.begin() + k, neighbors.end(), closer);
      neighbors.resize(k);
    }
    std::sort(neighbors.begin(), neighbors.end(), closer);

    std::vector<double> scores(items, 0.0);
    for (const Neighbor& nb : neighbors) {
      for (NodeIndex item : likes.out.row(nb.user)) scores[item] += nb.sim;
    }
    std::vector<char> mask(items, 0);
    for (NodeIndex i : exclusion.row(u)) mask[i] = 1;
    rec.lists[uu] = top_n_masked(scores, mask, n);
    if (rec.lists[uu].empty() && opts.popularity_fallback) {
      fill_by_popularity(likes, ranked, mask, n, rec.lists[uu]);
    }
  });
  return rec;
}

RecommendationSet ipp_recommend(const Hin& hin, std::uint32_t n, const BaselineOptions& opts) {
  if (n == 0) throw Error("recommendation list size must be at least 1");
  const FrozenRelation& likes = hin.frozen(opts.likes_relation);
  const std::string exclusion_rel = pick_exclusion_relation(hin, opts);
  const Csr& exclusion = hin.frozen(exclusion_rel).out;
  const std::uint32_t users = hin.group(likes.link.source_group()).size();
  const std::uint32_t items = hin.group(likes.link.target_group()).size();
  const std::vector<NodeIndex> ranked = popularity_ranking(likes, items);

  RecommendationSet rec;
  rec.user_group = likes.link.source_group();
  rec.item_group = likes.link.target_group();
  rec.list_size = n;
  rec.lists.resize(users);
  rec.provenance = "ipp";

  parallel_for(users, opts.jobs, [&](std::size_t uu) {
    const auto u = static_cast<NodeIndex>(uu);
    std::vector<char> mask(items, 0);
    for (NodeIndex i : exclusion.row(u)) mask[i] = 1;
    fill_by_popularity(likes, ranked, mask, n, rec.lists[uu]);
  });
  return rec;
}

}  // namespace hinwalk
