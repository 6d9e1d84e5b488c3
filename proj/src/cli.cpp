#include "hinwalk/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hinwalk/csv.hpp"
#include "hinwalk/diversity.hpp"
#include "hinwalk/evaluate.hpp"
#include "hinwalk/ingest.hpp"
#include "hinwalk/parallel.hpp"
#include "hinwalk/recommend.hpp"
#include "hinwalk/rng.hpp"
#include "hinwalk/snapshot.hpp"
#include "hinwalk/version.hpp"

namespace hinwalk {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  for (const std::string& tok : split_list(text)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(flag) + ": '" + tok + "' is not a number");
    }
  }
  if (out.empty()) throw CLI::ValidationError(std::string(flag) + ": empty list");
  return out;
}

std::vector<std::uint32_t> parse_u32s(const std::string& text, const char* flag) {
  std::vector<std::uint32_t> out;
  for (const std::string& tok : split_list(text)) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(tok, &pos);
      if (pos != tok.size() || v < 1) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(flag) + ": '" + tok + "' is not a positive integer");
    }
  }
  if (out.empty()) throw CLI::ValidationError(std::string(flag) + ": empty list");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file '" + path + "'");
  return out;
}

// One manifest sibling per output file; re-running the recorded argv writes
// all of them again, byte for byte.
void write_run_manifest(const std::string& command, const std::vector<std::string>& argv,
                        std::uint64_t seed, const std::string& fingerprint,
                        const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["command"] = command;
  m["argv"] = argv;
  m["seed"] = seed;
  m["dataset_fingerprint"] = fingerprint;
  m["outputs"] = outputs;
  const std::string text = m.dump(2) + "\n";
  for (const std::string& output : outputs) {
    auto out = open_out(output + ".manifest.json");
    out << text;
  }
}

// User-content relations: start at the like relation's source group, end
// elsewhere. Item-content relations: start at its target group, end elsewhere.
std::vector<std::string> content_relations(const Hin& hin, const std::string& likes,
                                           bool item_side) {
  const LinkGroup& lg = hin.relation(likes);
  const std::string& from = item_side ? lg.target_group() : lg.source_group();
  std::vector<std::string> out;
  for (const std::string& name : hin.relation_names()) {
    const LinkGroup& r = hin.relation(name);
    if (r.source_group() != from) continue;
    if (r.target_group() == lg.source_group() || r.target_group() == lg.target_group()) continue;
    out.push_back(name);
  }
  return out;
}

const char* kPlotGrid = R"PY(#!/usr/bin/env python3
# Renders the alpha-grid table: F1 and the two diversities vs list size,
# one line per alpha.
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "%CSV%"
rows = list(csv.DictReader(open(path)))
metrics = [("f1", "F1"), ("mi_diversity", "Mean individual diversity"),
           ("col_diversity", "Collective diversity")]
fig, axes = plt.subplots(1, 3, figsize=(14, 4))
for ax, (key, title) in zip(axes, metrics):
    series = defaultdict(list)
    for r in rows:
        series[float(r["alpha"])].append((int(r["list_size"]), float(r[key])))
    for alpha in sorted(series, reverse=True):
        pts = sorted(series[alpha])
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o",
                label=f"alpha={alpha:g}")
    ax.set_xlabel("list size")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
axes[0].legend(fontsize=8)
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print("wrote", out)
)PY";

const char* kPlotMosaic = R"PY(#!/usr/bin/env python3
# Renders the diversity mosaic as one heat panel per middle relation.
import csv
import sys

import matplotlib
matplotlib.use("Agg")
import numpy as np
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "%CSV%"
rows = list(csv.DictReader(open(path)))
middles = sorted({r["middle_relation"] for r in rows})
sources = sorted({r["source_group"] for r in rows})
targets = sorted({r["target_group"] for r in rows})
fig, axes = plt.subplots(1, max(len(middles), 1), figsize=(4 * len(middles), 4),
                         squeeze=False)
for ax, middle in zip(axes[0], middles):
    grid = np.full((len(sources), len(targets)), np.nan)
    for r in rows:
        if r["middle_relation"] != middle:
            continue
        grid[sources.index(r["source_group"]), targets.index(r["target_group"])] = \
            float(r["value"])
    im = ax.imshow(grid, cmap="viridis")
    ax.set_xticks(range(len(targets)), targets)
    ax.set_yticks(range(len(sources)), sources)
    ax.set_title(middle)
    for i in range(len(sources)):
        for j in range(len(targets)):
            if not np.isnan(grid[i, j]):
                ax.text(j, i, f"{grid[i, j]:.2f}", ha="center", va="center",
                        color="w", fontsize=7)
    fig.colorbar(im, ax=ax, shrink=0.8)
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print("wrote", out)
)PY";

const char* kPlotStudy = R"PY(#!/usr/bin/env python3
# Renders the shuffle study: per metric and list size, the replicate quantile
# band against the original value, over alpha.
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "%CSV%"
rows = list(csv.DictReader(open(path)))
metrics = sorted({r["metric"] for r in rows})
sizes = sorted({int(r["list_size"]) for r in rows})
fig, axes = plt.subplots(len(sizes), len(metrics),
                         figsize=(4 * len(metrics), 3 * len(sizes)), squeeze=False)
for i, size in enumerate(sizes):
    for j, metric in enumerate(metrics):
        ax = axes[i][j]
        sel = sorted((float(r["alpha"]), r) for r in rows
                     if r["metric"] == metric and int(r["list_size"]) == size)
        alphas = [a for a, _ in sel]
        ax.fill_between(alphas, [float(r["q10"]) for _, r in sel],
                        [float(r["q90"]) for _, r in sel], alpha=0.3,
                        label="replicate q10-q90")
        ax.plot(alphas, [float(r["median"]) for _, r in sel], "--", label="median")
        ax.plot(alphas, [float(r["original"]) for _, r in sel], "o-", label="original")
        ax.set_title(f"{metric}, N={size}")
        ax.set_xlabel("alpha")
        ax.grid(True, alpha=0.3)
axes[0][0].legend(fontsize=8)
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print("wrote", out)
)PY";

struct IngestCmd {
  std::string movielens_dir;
  std::string tables_manifest;
  std::string out = "hin.bin";
  std::string likes_from = "rates";
  int likes_threshold = 3;
  bool derive_tables_likes = false;

  void run() const {
    Hin hin = [&] {
      if (!movielens_dir.empty()) {
        Hin parsed = parse_movielens_100k(movielens_dir);
        return derive_likes(parsed, likes_from, likes_threshold);
      }
      std::string dataset;
      const auto specs = load_dataset_manifest(tables_manifest, &dataset);
      Hin parsed = parse_relation_tables(specs, dataset);
      if (derive_tables_likes) parsed = derive_likes(parsed, likes_from, likes_threshold);
      return parsed;
    }();
    write_snapshot(hin, out);

    std::vector<std::string> argv = {"ingest"};
    if (!movielens_dir.empty()) {
      argv.insert(argv.end(), {"--movielens", movielens_dir});
    } else {
      argv.insert(argv.end(), {"--tables", tables_manifest});
      if (derive_tables_likes) argv.push_back("--derive-likes");
    }
    argv.insert(argv.end(), {"--likes-from", likes_from, "--likes-threshold",
                             std::to_string(likes_threshold), "--out", out});
    write_run_manifest("ingest", argv, 0, file_fingerprint(out), {out});
    std::cerr << "wrote " << out << " (" << hin.group_names().size() << " groups, "
              << hin.relation_names().size() << " relations)\n";
  }
};

struct MosaicCmd {
  std::string hin_path;
  std::string out = "mosaic.csv";
  std::string sources = "auto";
  std::string targets = "auto";
  std::string middles = "likes";
  std::string baselines = "ubcf,ipp";
  std::string likes = "likes";
  std::uint32_t baseline_size = 5;
  std::uint32_t ubcf_k = 50;
  int jobs = default_jobs();

  void run() const {
    Hin hin = read_snapshot(hin_path);
    MosaicSpec spec;
    spec.jobs = jobs;
    if (sources == "auto") {
      spec.sources.push_back(std::nullopt);
      for (auto& r : content_relations(hin, likes, false)) spec.sources.push_back(r);
    } else {
      for (auto& t : split_list(sources)) {
        if (t == "identity") {
          spec.sources.push_back(std::nullopt);
        } else {
          spec.sources.push_back(t);
        }
      }
    }
    if (targets == "auto") {
      spec.targets = content_relations(hin, likes, true);
    } else {
      spec.targets = split_list(targets);
    }
    spec.middles = split_list(middles);

    BaselineOptions bopts;
    bopts.likes_relation = likes;
    bopts.jobs = jobs;
    if (baselines != "none") {
      for (auto& b : split_list(baselines)) {
        if (b == "ubcf") {
          hin = hin.with_relation(
              ubcf_recommend(hin, baseline_size, ubcf_k, bopts).to_link_group("rec_UBCF"));
          spec.middles.push_back("rec_UBCF");
        } else if (b == "ipp") {
          hin = hin.with_relation(
              ipp_recommend(hin, baseline_size, bopts).to_link_group("rec_IPP"));
          spec.middles.push_back("rec_IPP");
        } else {
          throw Error("unknown baseline '" + b + "'");
        }
      }
    }

    const MosaicTable table = diversity_mosaic(hin, spec);
    for (const std::string& w : table.warnings) std::cerr << "skipped: " << w << "\n";
    auto stream = open_out(out);
    write_mosaic_csv(table, stream);

    write_run_manifest("mosaic",
                       {"mosaic", "--hin", hin_path, "--sources", sources, "--targets", targets,
                        "--middles", middles, "--baselines", baselines, "--baseline-size",
                        std::to_string(baseline_size), "--ubcf-k", std::to_string(ubcf_k),
                        "--likes", likes, "--out", out},
                       0, file_fingerprint(hin_path), {out});
    std::cerr << "wrote " << out << " (" << table.cells.size() << " cells)\n";
  }
};

struct RecommendCmd {
  std::string hin_path;
  std::string method = "two-path";
  std::string x, y;
  double alpha = 0.5;
  std::uint32_t size = 10;
  std::uint32_t k = 50;
  std::string exclude = "liked";
  std::string likes = "likes";
  std::string rates = "rates";
  std::string out = "recommendations.csv";
  int jobs = default_jobs();

  void run() const {
    const Hin hin = read_snapshot(hin_path);
    RecommendationSet rec;
    if (method == "two-path") {
      if (x.empty() || y.empty()) throw Error("two-path recommendation needs --x and --y");
      TwoPathOptions opts;
      opts.likes_relation = likes;
      opts.rates_relation = rates;
      opts.exclude_rated = (exclude == "rated");
      opts.jobs = jobs;
      rec = two_path_recommend(hin, x, y, alpha, size, opts);
    } else if (method == "ubcf") {
      BaselineOptions opts;
      opts.likes_relation = likes;
      opts.jobs = jobs;
      rec = ubcf_recommend(hin, size, k, opts);
    } else if (method == "ipp") {
      BaselineOptions opts;
      opts.likes_relation = likes;
      opts.jobs = jobs;
      rec = ipp_recommend(hin, size, opts);
    } else {
      throw Error("unknown method '" + method + "'");
    }
    auto stream = open_out(out);
    rec.write_csv(hin, stream);

    std::vector<std::string> argv = {"recommend", "--hin", hin_path, "--method", method};
    if (method == "two-path") {
      argv.insert(argv.end(),
                  {"--x", x, "--y", y, "--alpha", csv::fmt(alpha), "--exclude", exclude});
    }
    if (method == "ubcf") argv.insert(argv.end(), {"--k", std::to_string(k)});
    argv.insert(argv.end(), {"--size", std::to_string(size), "--likes", likes, "--rates", rates,
                             "--out", out});
    write_run_manifest("recommend", argv, 0, file_fingerprint(hin_path), {out});
    std::cerr << "wrote " << out << "\n";
  }
};

struct GridCmd {
  std::string hin_path;
  std::string x, y;
  std::string alphas = "1,0.8,0.6,0.4,0.2,0";
  std::string sizes = "5,10,15,20";
  std::uint64_t seed = 7;
  double holdout = 0.1;
  std::string likes = "likes";
  std::string rates = "rates";
  std::string diversity = "Ty";
  std::string exclude = "liked";
  std::string out = "grid.csv";
  int jobs = default_jobs();

  void run() const {
    const Hin hin = read_snapshot(hin_path);
    const auto alpha_list = parse_doubles(alphas, "--alphas");
    const auto size_list = parse_u32s(sizes, "--sizes");
    SplitSpec split;
    split.fraction = holdout;
    split.seed = seed;
    split.likes_relation = likes;
    split.rates_relation = rates;
    GridOptions opts;
    opts.likes_relation = likes;
    opts.rates_relation = rates;
    opts.diversity_relation = diversity;
    opts.exclude_rated = (exclude == "rated");
    opts.jobs = jobs;
    const auto rows = run_alpha_grid(hin, x, y, alpha_list, size_list, split, opts);
    auto stream = open_out(out);
    write_results_csv(rows, stream);

    write_run_manifest("grid",
                       {"grid", "--hin", hin_path, "--x", x, "--y", y, "--alphas", alphas,
                        "--sizes", sizes, "--seed", std::to_string(seed), "--holdout",
                        csv::fmt(holdout), "--likes", likes, "--rates", rates, "--diversity",
                        diversity, "--exclude", exclude, "--out", out},
                       seed, file_fingerprint(hin_path), {out});
    std::cerr << "wrote " << out << " (" << rows.size() << " rows)\n";
  }
};

struct StudyCmd {
  std::string hin_path;
  std::string x, y;
  std::string shuffle;
  std::string alphas = "0.8,0.6,0.4,0.2,0";
  std::string sizes = "5,10";
  std::string quantiles = "0.1,0.9";
  std::uint32_t replicates = 10;
  double swap_factor = 10.0;
  std::uint64_t seed = 7;
  double holdout = 0.1;
  std::string likes = "likes";
  std::string rates = "rates";
  std::string diversity = "Ty";
  std::string exclude = "liked";
  std::string out = "study.csv";
  std::string replicates_out;
  int jobs = default_jobs();

  void run() const {
    const Hin hin = read_snapshot(hin_path);
    const auto alpha_list = parse_doubles(alphas, "--alphas");
    const auto size_list = parse_u32s(sizes, "--sizes");
    const auto q = parse_doubles(quantiles, "--quantiles");
    if (q.size() != 2 || q[0] < 0 || q[1] > 1 || q[0] >= q[1]) {
      throw CLI::ValidationError("--quantiles: expected 'lo,hi' within [0,1]");
    }
    const std::string shuffle_rel = shuffle.empty() ? x : shuffle;
    SplitSpec split;
    split.fraction = holdout;
    split.seed = seed;
    split.likes_relation = likes;
    split.rates_relation = rates;
    StudyOptions opts;
    opts.grid.likes_relation = likes;
    opts.grid.rates_relation = rates;
    opts.grid.diversity_relation = diversity;
    opts.grid.exclude_rated = (exclude == "rated");
    opts.grid.jobs = jobs;
    opts.q_lo = q[0];
    opts.q_hi = q[1];
    opts.swap_factor = swap_factor;

    const StudyResult study =
        run_randomization_study(hin, x, y, shuffle_rel, replicates, alpha_list, size_list, split,
                                derive_seed(seed, "shuffle"), opts);
    auto stream = open_out(out);
    write_study_csv(study, stream);
    const std::string rep_out = [&] {
      if (!replicates_out.empty()) return replicates_out;
      const std::filesystem::path p(out);
      const auto name = p.stem().string() + "_replicates" + p.extension().string();
      return (p.parent_path() / name).string();
    }();
    auto rep_stream = open_out(rep_out);
    write_replicates_csv(study, rep_stream);

    write_run_manifest("shuffle-study",
                       {"shuffle-study", "--hin", hin_path, "--x", x, "--y", y, "--shuffle",
                        shuffle_rel, "--replicates", std::to_string(replicates), "--alphas",
                        alphas, "--sizes", sizes, "--quantiles", quantiles, "--swap-factor",
                        csv::fmt(swap_factor), "--seed", std::to_string(seed), "--holdout",
                        csv::fmt(holdout), "--likes", likes, "--rates", rates, "--diversity",
                        diversity, "--exclude", exclude, "--out", out, "--replicates-out",
                        rep_out},
                       seed, file_fingerprint(hin_path), {out, rep_out});
    std::cerr << "wrote " << out << " and " << rep_out << "\n";
  }
};

struct PlotCmd {
  std::string kind;
  std::string csv_path;
  std::string out;

  void run() const {
    const char* tmpl = nullptr;
    if (kind == "grid") tmpl = kPlotGrid;
    if (kind == "mosaic") tmpl = kPlotMosaic;
    if (kind == "study") tmpl = kPlotStudy;
    if (!tmpl) throw Error("unknown plot kind '" + kind + "'");
    const std::string target = out.empty() ? "plot_" + kind + ".py" : out;
    std::string script(tmpl);
    const std::string token = "%CSV%";
    if (auto pos = script.find(token); pos != std::string::npos) {
      script.replace(pos, token.size(), csv_path);
    }
    auto stream = open_out(target);
    stream << script;
    write_run_manifest("plot", {"plot", "--kind", kind, "--csv", csv_path, "--out", target}, 0,
                       file_fingerprint(csv_path), {target});
    std::cerr << "wrote " << target << "\n";
  }
};

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{std::string(kToolName) + " " + kToolVersion +
               " - heterogeneous network diversity and recommendation workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto ingest = std::make_shared<IngestCmd>();
  auto* c1 = app.add_subcommand("ingest", "Parse a dataset into a binary network snapshot");
  auto* ml = c1->add_option("--movielens", ingest->movielens_dir,
                            "MovieLens 100K directory (u.data, u.item, u.user)");
  auto* tb = c1->add_option("--tables", ingest->tables_manifest,
                            "JSON manifest of relation tables");
  ml->excludes(tb);
  c1->add_option("--likes-from", ingest->likes_from, "rating relation to derive likes from");
  c1->add_option("--likes-threshold", ingest->likes_threshold,
                 "minimum rating that counts as a like");
  c1->add_flag("--derive-likes", ingest->derive_tables_likes,
               "derive likes when ingesting relation tables");
  c1->add_option("--out", ingest->out, "snapshot output path");
  c1->callback([ingest] {
    if (ingest->movielens_dir.empty() && ingest->tables_manifest.empty()) {
      throw CLI::RequiredError("--movielens or --tables");
    }
    ingest->run();
  });

  auto mosaic = std::make_shared<MosaicCmd>();
  auto* c2 = app.add_subcommand("mosaic", "Mean-individual diversity mosaic table");
  c2->add_option("--hin", mosaic->hin_path, "network snapshot")->required();
  c2->add_option("--sources", mosaic->sources,
                 "source relations ('auto' or a list; 'identity' starts at users)");
  c2->add_option("--targets", mosaic->targets, "target relations ('auto' or list)");
  c2->add_option("--middles", mosaic->middles, "middle relations");
  c2->add_option("--baselines", mosaic->baselines, "baseline recommenders ('ubcf,ipp' or 'none')");
  c2->add_option("--baseline-size", mosaic->baseline_size, "baseline list size");
  c2->add_option("--ubcf-k", mosaic->ubcf_k, "UBCF neighborhood size");
  c2->add_option("--likes", mosaic->likes, "likes relation name");
  c2->add_option("--out", mosaic->out, "CSV output");
  c2->add_option("--jobs", mosaic->jobs, "worker threads");
  c2->callback([mosaic] { mosaic->run(); });

  auto rec = std::make_shared<RecommendCmd>();
  auto* c3 = app.add_subcommand("recommend", "Produce one recommendation set");
  c3->add_option("--hin", rec->hin_path, "network snapshot")->required();
  c3->add_option("--method", rec->method, "two-path | ubcf | ipp");
  c3->add_option("--x", rec->x, "user-content relation (two-path)");
  c3->add_option("--y", rec->y, "item-content relation (two-path)");
  c3->add_option("--alpha", rec->alpha, "item-content weight in [0,1]");
  c3->add_option("--size,-n", rec->size, "list size");
  c3->add_option("--k", rec->k, "UBCF neighborhood size");
  c3->add_option("--exclude", rec->exclude, "liked | rated (two-path exclusion set)");
  c3->add_option("--likes", rec->likes, "likes relation name");
  c3->add_option("--rates", rec->rates, "rates relation name");
  c3->add_option("--out", rec->out, "CSV output");
  c3->add_option("--jobs", rec->jobs, "worker threads");
  c3->callback([rec] { rec->run(); });

  auto grid = std::make_shared<GridCmd>();
  auto* c4 = app.add_subcommand("grid", "Alpha/list-size accuracy and diversity grid");
  c4->add_option("--hin", grid->hin_path, "network snapshot")->required();
  c4->add_option("--x", grid->x, "user-content relation")->required();
  c4->add_option("--y", grid->y, "item-content relation")->required();
  c4->add_option("--alphas", grid->alphas, "comma list of alpha values");
  c4->add_option("--sizes", grid->sizes, "comma list of list sizes");
  c4->add_option("--seed", grid->seed, "master seed");
  c4->add_option("--holdout", grid->holdout, "test fraction of likes");
  c4->add_option("--likes", grid->likes, "likes relation name");
  c4->add_option("--rates", grid->rates, "rates relation name");
  c4->add_option("--diversity", grid->diversity, "item-content relation for diversity");
  c4->add_option("--exclude", grid->exclude, "liked | rated");
  c4->add_option("--out", grid->out, "CSV output");
  c4->add_option("--jobs", grid->jobs, "worker threads");
  c4->callback([grid] { grid->run(); });

  auto study = std::make_shared<StudyCmd>();
  auto* c5 = app.add_subcommand("shuffle-study",
                                "Degree-preserving randomization study with quantile bands");
  c5->add_option("--hin", study->hin_path, "network snapshot")->required();
  c5->add_option("--x", study->x, "user-content relation")->required();
  c5->add_option("--y", study->y, "item-content relation")->required();
  c5->add_option("--shuffle", study->shuffle, "relation to randomize (default: --x)");
  c5->add_option("--replicates", study->replicates, "number of randomized replicates");
  c5->add_option("--alphas", study->alphas, "comma list of alpha values");
  c5->add_option("--sizes", study->sizes, "comma list of list sizes");
  c5->add_option("--quantiles", study->quantiles, "band quantiles 'lo,hi'");
  c5->add_option("--swap-factor", study->swap_factor, "swap attempts per edge");
  c5->add_option("--seed", study->seed, "master seed");
  c5->add_option("--holdout", study->holdout, "test fraction of likes");
  c5->add_option("--likes", study->likes, "likes relation name");
  c5->add_option("--rates", study->rates, "rates relation name");
  c5->add_option("--diversity", study->diversity, "item-content relation for diversity");
  c5->add_option("--exclude", study->exclude, "liked | rated");
  c5->add_option("--out", study->out, "study CSV output");
  c5->add_option("--replicates-out", study->replicates_out, "replicate manifest CSV");
  c5->add_option("--jobs", study->jobs, "worker threads");
  c5->callback([study] { study->run(); });

  auto plot = std::make_shared<PlotCmd>();
  auto* c6 = app.add_subcommand("plot", "Emit a plotting script for an output CSV");
  c6->add_option("--kind", plot->kind, "grid | mosaic | study")->required();
  c6->add_option("--csv", plot->csv_path, "input CSV")->required();
  c6->add_option("--out", plot->out, "script output path");
  c6->callback([plot] { plot->run(); });

  std::reverse(args.begin(), args.end());  // CLI11's vector parse pops from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace hinwalk
