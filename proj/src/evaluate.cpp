#include "hinwalk/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "hinwalk/csv.hpp"
#include "hinwalk/diversity.hpp"
#include "hinwalk/parallel.hpp"
#include "hinwalk/rng.hpp"
#include "hinwalk/shuffle.hpp"

namespace hinwalk {

namespace {

std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.src) << 32) | e.dst;
}

LinkGroup drop_edges(const LinkGroup& lg, const std::unordered_set<std::uint64_t>& hidden) {
  std::vector<Edge> edges;
  std::vector<std::uint8_t> ratings;
  edges.reserve(lg.size());
  const bool rated = lg.has_ratings();
  if (rated) ratings.reserve(lg.size());
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const Edge e = lg.edges()[i];
    if (hidden.count(edge_key(e))) continue;
    edges.push_back(e);
    if (rated) ratings.push_back(lg.ratings()[i]);
  }
  return LinkGroup(lg.name(), lg.source_group(), lg.target_group(), std::move(edges),
                   std::move(ratings));
}

}  // namespace

std::vector<std::vector<NodeIndex>> TestSet::by_user(std::uint32_t user_count) const {
  std::vector<std::vector<NodeIndex>> out(user_count);
  for (const Edge& e : edges) out[e.src].push_back(e.dst);
  return out;
}

std::pair<Hin, TestSet> split_likes(const Hin& hin, const SplitSpec& spec) {
  if (spec.fraction <= 0.0 || spec.fraction >= 1.0) {
    throw Error("holdout fraction must lie in (0, 1)");
  }
  const LinkGroup& likes = hin.relation(spec.likes_relation);
  const std::size_t m = likes.size();
  const auto hidden_count = static_cast<std::size_t>(std::floor(spec.fraction * double(m)));

  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(spec.seed, "split"));
  shuffle_in_place(order, rng);
  order.resize(hidden_count);

  TestSet test;
  test.user_group = likes.source_group();
  test.item_group = likes.target_group();
  std::unordered_set<std::uint64_t> hidden;
  hidden.reserve(hidden_count * 2);
  for (std::uint32_t idx : order) {
    const Edge e = likes.edges()[idx];
    test.edges.push_back(e);
    hidden.insert(edge_key(e));
  }
  std::sort(test.edges.begin(), test.edges.end());

  Hin train = hin.with_replaced_relation(drop_edges(likes, hidden));
  if (!spec.rates_relation.empty() && spec.rates_relation != spec.likes_relation &&
      train.has_relation(spec.rates_relation)) {
    train = train.with_replaced_relation(drop_edges(train.relation(spec.rates_relation), hidden));
  }
  return {std::move(train), std::move(test)};
}

Metrics precision_recall_f1(const RecommendationSet& rec, const TestSet& test) {
  if (test.edges.empty()) throw Error("empty test set");
  if (rec.user_group != test.user_group || rec.item_group != test.item_group) {
    throw Error("recommendation set and test set cover different groups");
  }
  const auto per_user = test.by_user(static_cast<std::uint32_t>(rec.lists.size()));
  Metrics m;
  double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
  for (std::size_t u = 0; u < rec.lists.size(); ++u) {
    const auto& truth = per_user[u];
    if (truth.empty()) continue;
    std::size_t hits = 0;
    for (const ScoredItem& si : rec.lists[u]) {
      if (std::find(truth.begin(), truth.end(), si.item) != truth.end()) ++hits;
    }
    const double p =
        rec.lists[u].empty() ? 0.0 : double(hits) / double(rec.lists[u].size());
    const double r = double(hits) / double(truth.size());
    p_sum += p;
    r_sum += r;
    f_sum += (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
    ++m.evaluated_users;
  }
  if (m.evaluated_users > 0) {
    p_sum /= m.evaluated_users;
    r_sum /= m.evaluated_users;
    f_sum /= m.evaluated_users;
  }
  m.precision = p_sum;
  m.recall = r_sum;
  m.f1 = f_sum;
  return m;
}

namespace {

struct CellMetrics {
  double f1 = 0.0, precision = 0.0, recall = 0.0;
  double mi = 0.0, col = 0.0;
};

// Evaluates every (alpha, size) cell on one train/test pair. The per-user
// walk distributions for both paths are computed once and mixed per alpha.
std::vector<CellMetrics> grid_eval(const Hin& train, const TestSet& test,
                                   std::string_view x_relation, std::string_view y_relation,
                                   std::span<const double> alphas,
                                   std::span<const std::uint32_t> list_sizes,
                                   const GridOptions& opts) {
  const LinkGroup& likes = train.relation(opts.likes_relation);
  const std::string& user_group = likes.source_group();
  const std::string& item_group = likes.target_group();
  const std::uint32_t users = train.group(user_group).size();
  const std::uint32_t items = train.group(item_group).size();

  const MetaPath user_path = validate_meta_path(
      train, {{std::string(x_relation), false}, {std::string(x_relation), true},
              {opts.likes_relation, false}});
  const MetaPath item_path = validate_meta_path(
      train, {{opts.likes_relation, false}, {std::string(y_relation), false},
              {std::string(y_relation), true}});

  const OperatorChain user_chain(train, user_path);
  const OperatorChain item_chain(train, item_path);
  std::vector<std::vector<double>> px(users), py(users);
  parallel_for(users, opts.jobs, [&](std::size_t u) {
    px[u] = user_chain.from_source(static_cast<NodeIndex>(u)).mass;
    py[u] = item_chain.from_source(static_cast<NodeIndex>(u)).mass;
  });

  const std::string exclusion_rel =
      opts.exclude_rated ? opts.rates_relation : opts.likes_relation;
  const Csr& exclusion = train.frozen(exclusion_rel).out;

  const std::uint32_t max_n = *std::max_element(list_sizes.begin(), list_sizes.end());
  std::vector<CellMetrics> cells(alphas.size() * list_sizes.size());

  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double alpha = alphas[ai];
    RecommendationSet rec;
    rec.user_group = user_group;
    rec.item_group = item_group;
    rec.list_size = max_n;
    rec.lists.resize(users);
    parallel_for(users, opts.jobs, [&](std::size_t u) {
      std::vector<double> scores(items, 0.0);
      for (std::uint32_t i = 0; i < items; ++i) {
        scores[i] = (1.0 - alpha) * px[u][i] + alpha * py[u][i];
      }
      std::vector<NodeIndex> excl(exclusion.row(static_cast<NodeIndex>(u)).begin(),
                                  exclusion.row(static_cast<NodeIndex>(u)).end());
      rec.lists[u] = recommend_top_n(scores, excl, max_n);
    });

    for (std::size_t ni = 0; ni < list_sizes.size(); ++ni) {
      const RecommendationSet at_n = rec.truncated(list_sizes[ni]);
      CellMetrics& cell = cells[ai * list_sizes.size() + ni];
      const Metrics m = precision_recall_f1(at_n, test);
      cell.f1 = m.f1;
      cell.precision = m.precision;
      cell.recall = m.recall;
      const Hin with_rec = train.with_relation(at_n.to_link_group("rec"));
      const MetaPath div_path = validate_meta_path(
          with_rec, {{"rec", false}, {opts.diversity_relation, false}});
      cell.mi = mean_individual_diversity(with_rec, div_path, opts.jobs).value;
      cell.col = collective_diversity(with_rec, div_path).value;
    }
  }
  return cells;
}

}  // namespace

std::vector<ExperimentResult> run_alpha_grid(const Hin& hin, std::string_view x_relation,
                                             std::string_view y_relation,
                                             std::span<const double> alphas,
                                             std::span<const std::uint32_t> list_sizes,
                                             const SplitSpec& split, const GridOptions& opts) {
  if (alphas.empty() || list_sizes.empty()) throw Error("empty alpha or list-size grid");
  auto [train, test] = split_likes(hin, split);
  const auto cells = grid_eval(train, test, x_relation, y_relation, alphas, list_sizes, opts);
  std::vector<ExperimentResult> rows;
  rows.reserve(cells.size());
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (std::size_t ni = 0; ni < list_sizes.size(); ++ni) {
      const CellMetrics& c = cells[ai * list_sizes.size() + ni];
      ExperimentResult r;
      r.dataset = hin.dataset();
      r.x_relation = std::string(x_relation);
      r.y_relation = std::string(y_relation);
      r.alpha = alphas[ai];
      r.list_size = list_sizes[ni];
      r.replicate = 0;
      r.f1 = c.f1;
      r.precision = c.precision;
      r.recall = c.recall;
      r.mi_diversity = c.mi;
      r.col_diversity = c.col;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

void write_results_csv(std::span<const ExperimentResult> rows, std::ostream& out) {
  csv::write_row(out, {"dataset", "x_relation", "y_relation", "alpha", "list_size", "replicate",
                       "f1", "precision", "recall", "mi_diversity", "col_diversity"});
  for (const ExperimentResult& r : rows) {
    csv::write_row(out, {r.dataset, r.x_relation, r.y_relation, csv::fmt(r.alpha),
                         std::to_string(r.list_size), std::to_string(r.replicate),
                         csv::fmt(r.f1), csv::fmt(r.precision), csv::fmt(r.recall),
                         csv::fmt(r.mi_diversity), csv::fmt(r.col_diversity)});
  }
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error("quantile of empty sample");
  if (sorted.size() == 1) return sorted[0];
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

StudyResult run_randomization_study(const Hin& hin, std::string_view x_relation,
                                    std::string_view y_relation,
                                    std::string_view shuffle_relation,
                                    std::uint32_t replicate_count,
                                    std::span<const double> alphas,
                                    std::span<const std::uint32_t> list_sizes,
                                    const SplitSpec& split, std::uint64_t shuffle_master_seed,
                                    const StudyOptions& opts) {
  if (replicate_count < 1) throw Error("replicate count must be at least 1");
  if (alphas.empty() || list_sizes.empty()) throw Error("empty alpha or list-size grid");

  auto [train, test] = split_likes(hin, split);
  const auto original =
      grid_eval(train, test, x_relation, y_relation, alphas, list_sizes, opts.grid);

  const LinkGroup& base_relation = train.relation(shuffle_relation);
  std::vector<std::vector<CellMetrics>> replicate_cells(replicate_count);
  std::vector<ReplicateRecord> records(replicate_count);
  GridOptions per_replicate = opts.grid;
  per_replicate.jobs = 1;  // replicates are the parallel unit
  parallel_for(replicate_count, opts.grid.jobs, [&](std::size_t r) {
    ShuffleConfig cfg;
    cfg.relation = std::string(shuffle_relation);
    cfg.seed = derive_seed(shuffle_master_seed, "replicate", r);
    cfg.swap_factor = opts.swap_factor;
    const Hin shuffled = shuffle_link_group(train, cfg);
    replicate_cells[r] =
        grid_eval(shuffled, test, x_relation, y_relation, alphas, list_sizes, per_replicate);
    records[r] = {static_cast<std::uint32_t>(r + 1), cfg.seed, cfg.relation,
                  edge_jaccard(base_relation, shuffled.relation(shuffle_relation))};
  });

  StudyResult study;
  study.replicates = std::move(records);
  const char* metric_names[3] = {"f1", "mi_diversity", "col_diversity"};
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (std::size_t ni = 0; ni < list_sizes.size(); ++ni) {
      const std::size_t cell = ai * list_sizes.size() + ni;
      for (int metric = 0; metric < 3; ++metric) {
        auto pick = [&](const CellMetrics& c) {
          return metric == 0 ? c.f1 : (metric == 1 ? c.mi : c.col);
        };
        std::vector<double> values;
        values.reserve(replicate_count);
        for (const auto& rc : replicate_cells) values.push_back(pick(rc[cell]));
        std::sort(values.begin(), values.end());
        StudyRow row;
        row.metric = metric_names[metric];
        row.alpha = alphas[ai];
        row.list_size = list_sizes[ni];
        row.original = pick(original[cell]);
        row.q_lo = quantile_sorted(values, opts.q_lo);
        row.median = quantile_sorted(values, 0.5);
        row.q_hi = quantile_sorted(values, opts.q_hi);
        row.replicates = replicate_count;
        study.rows.push_back(std::move(row));
      }
    }
  }
  return study;
}

void write_study_csv(const StudyResult& study, std::ostream& out) {
  csv::write_row(out, {"metric", "alpha", "list_size", "original", "q10", "median", "q90",
                       "replicates"});
  for (const StudyRow& r : study.rows) {
    csv::write_row(out, {r.metric, csv::fmt(r.alpha), std::to_string(r.list_size),
                         csv::fmt(r.original), csv::fmt(r.q_lo), csv::fmt(r.median),
                         csv::fmt(r.q_hi), std::to_string(r.replicates)});
  }
}

void write_replicates_csv(const StudyResult& study, std::ostream& out) {
  csv::write_row(out, {"replicate", "seed", "relation", "jaccard_to_original"});
  for (const ReplicateRecord& r : study.replicates) {
    csv::write_row(out, {std::to_string(r.index), std::to_string(r.seed), r.relation,
                         csv::fmt(r.jaccard_to_original)});
  }
}

}  // namespace hinwalk
