#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hinwalk/diversity.hpp"
#include "hinwalk/ingest.hpp"
#include "support/fixture_cache.hpp"
#include "support/oracle.hpp"
#include "support/toy.hpp"

using namespace hinwalk;
using testsupport::toy_hin;

namespace {

Pmf make_pmf(std::vector<double> mass, double lost = 0.0) {
  Pmf p;
  p.group = "g";
  p.mass = std::move(mass);
  p.lost_mass = lost;
  return p;
}

}  // namespace

TEST_CASE("entropy golden values") {
  CHECK(shannon_entropy(make_pmf({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shannon_entropy(make_pmf({0.75, 0.25})) == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK(shannon_entropy(make_pmf({1.0, 0.0})) == 0.0);
  CHECK_THROWS_AS(shannon_entropy(make_pmf({0.0, 0.0}, 1.0)), DegenerateDistribution);
}

TEST_CASE("perplexity golden values") {
  CHECK(perplexity(make_pmf({1.0 / 3, 1.0 / 3, 1.0 / 3})) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::abs(perplexity(make_pmf({0.6, 0.2, 0.1, 0.1})) - 2.97) < 0.005);
  CHECK(std::abs(perplexity(make_pmf({0.75, 0.25})) - 1.7547) < 0.0005);
}

TEST_CASE("lost mass renormalizes over the surviving part") {
  // (0.25, 0.25) with half the mass lost behaves like a fair coin
  CHECK(shannon_entropy(make_pmf({0.25, 0.25}, 0.5)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("toy diversities match the worked example") {
  const Hin hin = toy_hin();
  const MetaPath path = validate_meta_path(hin, {{"likes", false}, {"Ty", false}});

  const DiversityReport mi = mean_individual_diversity(hin, path);
  CHECK(mi.kind == DiversityKind::mean_individual);
  CHECK(mi.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(mi.excluded_sources == 0);

  const DiversityReport col = collective_diversity(hin, path);
  CHECK(std::abs(col.value - 1.7547) < 0.0005);
}

TEST_CASE("point-mass walks give diversity 1") {
  // every user likes exactly one item of its own type
  std::vector<ObjectGroup> groups;
  groups.emplace_back("u", std::vector<std::string>{"a", "b"});
  groups.emplace_back("i", std::vector<std::string>{"x", "y"});
  groups.emplace_back("t", std::vector<std::string>{"s", "w"});
  std::vector<LinkGroup> links;
  links.emplace_back("likes", "u", "i", std::vector<Edge>{{0, 0}, {1, 1}});
  links.emplace_back("Ty", "i", "t", std::vector<Edge>{{0, 0}, {1, 1}});
  const Hin hin = Hin::build(std::move(groups), std::move(links));
  const MetaPath path = validate_meta_path(hin, {{"likes", false}, {"Ty", false}});
  CHECK(mean_individual_diversity(hin, path).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shared single target collapses collective diversity to 1") {
  std::vector<ObjectGroup> groups;
  groups.emplace_back("u", std::vector<std::string>{"a", "b", "c"});
  groups.emplace_back("i", std::vector<std::string>{"only"});
  std::vector<LinkGroup> links;
  links.emplace_back("r", "u", "i", std::vector<Edge>{{0, 0}, {1, 0}, {2, 0}});
  const Hin hin = Hin::build(std::move(groups), std::move(links));
  CHECK(collective_diversity(hin, validate_meta_path(hin, {{"r", false}})).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dangling sources are excluded and counted") {
  std::vector<ObjectGroup> groups;
  groups.emplace_back("u", std::vector<std::string>{"a", "b", "c"});
  groups.emplace_back("i", std::vector<std::string>{"x", "y"});
  std::vector<LinkGroup> links;
  links.emplace_back("r", "u", "i", std::vector<Edge>{{0, 0}, {0, 1}});
  const Hin hin = Hin::build(std::move(groups), std::move(links));
  const MetaPath path = validate_meta_path(hin, {{"r", false}});
  const DiversityReport mi = mean_individual_diversity(hin, path);
  CHECK(mi.excluded_sources == 2);
  CHECK(mi.value == doctest::Approx(2.0).epsilon(1e-12));

  // all sources dangling -> degenerate
  std::vector<ObjectGroup> g2;
  g2.emplace_back("u", std::vector<std::string>{"a"});
  g2.emplace_back("i", std::vector<std::string>{"x"});
  std::vector<LinkGroup> l2;
  l2.emplace_back("r", "u", "i", std::vector<Edge>{});
  const Hin empty = Hin::build(std::move(g2), std::move(l2));
  CHECK_THROWS_AS(mean_individual_diversity(empty, validate_meta_path(empty, {{"r", false}})),
                  DegenerateDistribution);
  CHECK_THROWS_AS(collective_diversity(empty, validate_meta_path(empty, {{"r", false}})),
                  DegenerateDistribution);
}

TEST_CASE("random walks: diversity agrees with the enumeration oracle") {
  Rng rng(808);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testsupport::random_instance(rng);
    const testsupport::OracleGraph oracle(inst.hin, inst.path);
    const std::uint32_t sources = inst.hin.group(inst.path.source_group).size();

    const Pmf oracle_col = oracle.from_uniform(sources);
    if (oracle_col.surviving_mass() <= 1e-12) continue;
    const double expect_col = [&] {
      const double total = oracle_col.surviving_mass();
      double h = 0.0;
      for (double p : oracle_col.mass) {
        if (p > 0) h -= (p / total) * std::log2(p / total);
      }
      return std::exp2(h);
    }();
    CHECK(std::abs(collective_diversity(inst.hin, inst.path).value - expect_col) < 1e-9);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("properties: uniform perplexity, padding, bounds, permutation") {
  for (std::uint32_t n : {1u, 2u, 3u, 10u, 100u, 1000u, 10000u}) {
    const Pmf uniform = make_pmf(std::vector<double>(n, 1.0 / n));
    CHECK(std::abs(perplexity(uniform) - double(n)) < 1e-9 * n);
  }

  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + bounded(rng, 12);
    std::vector<double> mass(n);
    double total = 0.0;
    for (auto& v : mass) {
      v = uniform01(rng);
      total += v;
    }
    for (auto& v : mass) v /= total;
    const double p = perplexity(make_pmf(mass));

    // perplexity is bounded by the support size
    std::size_t support = 0;
    for (double v : mass) support += v > 0 ? 1 : 0;
    CHECK(p >= 1.0 - 1e-12);
    CHECK(p <= double(support) + 1e-9);

    // appending zero-probability entries changes nothing
    auto padded = mass;
    padded.insert(padded.end(), 5, 0.0);
    CHECK(perplexity(make_pmf(padded)) == doctest::Approx(p).epsilon(1e-12));

    // relabeling is invisible
    auto shuffled = mass;
    shuffle_in_place(shuffled, rng);
    CHECK(perplexity(make_pmf(shuffled)) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("geometric mean lies between the per-source extremes") {
  Rng rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testsupport::random_instance(rng);
    const auto per_source = all_source_distributions(inst.hin, inst.path);
    double lo = 1e300, hi = 0.0;
    bool any = false;
    for (const Pmf& p : per_source) {
      if (p.surviving_mass() <= 1e-12) continue;
      const double v = perplexity(p);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      any = true;
    }
    if (!any) continue;
    const double mi = mean_individual_diversity(inst.hin, inst.path).value;
    CHECK(mi >= lo - 1e-9);
    CHECK(mi <= hi + 1e-9);
  }
}

TEST_CASE("relabeling target nodes leaves both diversities unchanged") {
  const Hin hin = toy_hin();
  // same network with the two types swapped
  std::vector<ObjectGroup> groups;
  groups.emplace_back("user", std::vector<std::string>{"u1", "u2"});
  groups.emplace_back("item", std::vector<std::string>{"i1", "i2", "i3"});
  groups.emplace_back("type", std::vector<std::string>{"t2", "t1"});
  std::vector<LinkGroup> links;
  links.emplace_back("likes", "user", "item", std::vector<Edge>{{0, 0}, {0, 1}, {1, 0}, {1, 2}});
  links.emplace_back("Ty", "item", "type", std::vector<Edge>{{0, 1}, {1, 1}, {2, 0}});
  const Hin swapped = Hin::build(std::move(groups), std::move(links));

  const MetaPath p1 = validate_meta_path(hin, {{"likes", false}, {"Ty", false}});
  const MetaPath p2 = validate_meta_path(swapped, {{"likes", false}, {"Ty", false}});
  CHECK(mean_individual_diversity(hin, p1).value ==
        doctest::Approx(mean_individual_diversity(swapped, p2).value).epsilon(1e-12));
  CHECK(collective_diversity(hin, p1).value ==
        doctest::Approx(collective_diversity(swapped, p2).value).epsilon(1e-12));
}

TEST_CASE("toy mosaic with identity source reduces to the worked value") {
  const Hin hin = toy_hin();
  MosaicSpec spec;
  spec.sources = {std::nullopt};
  spec.middles = {"likes"};
  spec.targets = {"Ty"};
  const MosaicTable table = diversity_mosaic(hin, spec);
  REQUIRE(table.cells.size() == 1);
  CHECK(table.cells[0].source_group == "user");
  CHECK(table.cells[0].middle_relation == "likes");
  CHECK(table.cells[0].target_group == "type");
  CHECK(table.cells[0].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(table.warnings.empty());
}

TEST_CASE("non-composing mosaic combinations are skipped with a warning") {
  const Hin hin = toy_hin();
  MosaicSpec spec;
  spec.sources = {std::nullopt, std::string("Ty")};  // ~Ty starts at type, cannot precede likes
  spec.middles = {"likes"};
  spec.targets = {"Ty"};
  const MosaicTable table = diversity_mosaic(hin, spec);
  CHECK(table.cells.size() == 1);
  CHECK(table.warnings.size() == 1);
}

TEST_CASE("ml100k mosaic: per-gender diversity double-checked by direct counting") {
  const Hin hin = derive_likes(parse_movielens_100k(testsupport::ml100k_dir()), "rates", 3);
  const MetaPath path =
      validate_meta_path(hin, {{"Ge", true}, {"likes", false}, {"Ty", false}});
  const DiversityReport mi = mean_individual_diversity(hin, path, 2);
  CHECK(mi.value >= 1.0);
  CHECK(mi.value <= 19.0);

  // independent route: accumulate each gender's type distribution by walking
  // raw edge lists with explicit degree bookkeeping
  const testsupport::OracleGraph oracle(hin, path);
  double log_sum = 0.0;
  int contributing = 0;
  for (NodeIndex g = 0; g < hin.group("gender").size(); ++g) {
    const Pmf p = oracle.from_source(g);
    const double total = p.surviving_mass();
    if (total <= 1e-12) continue;
    double h = 0.0;
    for (double v : p.mass) {
      if (v > 0) h -= (v / total) * std::log2(v / total);
    }
    log_sum += h;
    ++contributing;
  }
  REQUIRE(contributing == 2);
  CHECK(mi.value == doctest::Approx(std::exp2(log_sum / 2)).epsilon(1e-9));
}

TEST_CASE("ml100k mosaic over likes stays within the target-group bounds") {
  const Hin hin = derive_likes(parse_movielens_100k(testsupport::ml100k_dir()), "rates", 3);
  MosaicSpec spec;
  spec.sources = {std::nullopt, std::string("Oc"), std::string("Ag"), std::string("Ge"),
                  std::string("Lo")};
  spec.middles = {"likes"};
  spec.targets = {"Ty", "Ye"};
  spec.jobs = 2;
  const MosaicTable table = diversity_mosaic(hin, spec);
  REQUIRE(table.cells.size() == 10);
  CHECK(table.warnings.empty());
  for (const MosaicCell& cell : table.cells) {
    const double bound = cell.target_group == "type" ? 19.0 : 72.0;
    CHECK(cell.value >= 1.0);
    CHECK(cell.value <= bound + 1e-9);
  }
}

TEST_CASE("dm mosaic: actor diversity exceeds type diversity") {
  std::string dataset;
  const auto specs = load_dataset_manifest(testsupport::dm_dir() / "dataset.json", &dataset);
  const Hin hin = parse_relation_tables(specs, dataset);

  MosaicSpec spec;
  spec.sources = {std::string("Gr"), std::string("Lo")};
  spec.middles = {"likes"};
  spec.targets = {"Ac", "Ty"};
  const MosaicTable table = diversity_mosaic(hin, spec);
  REQUIRE(table.cells.size() == 4);
  for (const auto& src : {"usergroup", "location"}) {
    double ac = 0, ty = 0;
    for (const auto& c : table.cells) {
      if (c.source_group == src && c.target_group == "actor") ac = c.value;
      if (c.source_group == src && c.target_group == "type") ty = c.value;
    }
    CHECK(ac > ty);
  }
}

TEST_CASE("mosaic csv layout") {
  const Hin hin = toy_hin();
  MosaicSpec spec;
  spec.sources = {std::nullopt};
  spec.middles = {"likes"};
  spec.targets = {"Ty"};
  std::ostringstream out;
  write_mosaic_csv(diversity_mosaic(hin, spec), out);
  const std::string text = out.str();
  CHECK(text.find("source_group,middle_relation,target_group,measure,value,excluded_sources") ==
        0);
  CHECK(text.find("user,likes,type,mean_individual,1.41421356237,0") != std::string::npos);
}
