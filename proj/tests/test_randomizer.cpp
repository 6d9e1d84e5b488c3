#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "hinwalk/ingest.hpp"
#include "hinwalk/rng.hpp"
#include "hinwalk/shuffle.hpp"
#include "support/fixture_cache.hpp"
#include "support/toy.hpp"

using namespace hinwalk;

namespace {

// A relation where sources hold several memberships each.
Hin multi_membership_hin(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> src_labels, dst_labels;
  for (int i = 0; i < 60; ++i) src_labels.push_back("s" + std::to_string(i));
  for (int i = 0; i < 25; ++i) dst_labels.push_back("t" + std::to_string(i));
  std::vector<Edge> edges;
  for (NodeIndex s = 0; s < 60; ++s) {
    const auto degree = 2 + bounded(rng, 4);
    std::set<NodeIndex> picked;
    while (picked.size() < degree) picked.insert(static_cast<NodeIndex>(bounded(rng, 25)));
    for (NodeIndex t : picked) edges.push_back({s, t});
  }
  std::vector<ObjectGroup> groups;
  groups.emplace_back("src", std::move(src_labels));
  groups.emplace_back("dst", std::move(dst_labels));
  std::vector<LinkGroup> links;
  links.emplace_back("member", "src", "dst", std::move(edges));
  return Hin::build(std::move(groups), std::move(links));
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> degree_profile(
    const Hin& hin, const std::string& relation) {
  const FrozenRelation& fr = hin.frozen(relation);
  std::vector<std::uint32_t> out(fr.out.rows()), in(fr.in.rows());
  for (std::uint32_t i = 0; i < fr.out.rows(); ++i) out[i] = fr.out.degree(i);
  for (std::uint32_t i = 0; i < fr.in.rows(); ++i) in[i] = fr.in.degree(i);
  return {out, in};
}

bool simple(const LinkGroup& lg) {
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  for (const Edge& e : lg.edges()) {
    if (!seen.insert({e.src, e.dst}).second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("shuffle preserves per-node degrees, edge count, and simplicity") {
  const Hin hin = multi_membership_hin(3);
  const auto before = degree_profile(hin, "member");
  for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
    const Hin shuffled = shuffle_link_group(hin, {"member", seed, 10.0});
    CHECK(degree_profile(shuffled, "member") == before);
    CHECK(shuffled.relation("member").size() == hin.relation("member").size());
    CHECK(simple(shuffled.relation("member")));
  }
}

TEST_CASE("other link groups stay byte-identical (shared) after a shuffle") {
  const Hin hin = testsupport::toy_hin();
  const Hin shuffled = shuffle_link_group(hin, {"likes", 5, 10.0});
  CHECK(shuffled.frozen_ptr("Ty") == hin.frozen_ptr("Ty"));
  CHECK(shuffled.group_ptr("user") == hin.group_ptr("user"));
  CHECK(shuffled.frozen_ptr("likes") != hin.frozen_ptr("likes"));
}

TEST_CASE("all sources pointing at one target: shuffle is the identity") {
  std::vector<ObjectGroup> groups;
  groups.emplace_back("s", std::vector<std::string>{"a", "b", "c"});
  groups.emplace_back("t", std::vector<std::string>{"only", "other"});
  std::vector<LinkGroup> links;
  links.emplace_back("r", "s", "t", std::vector<Edge>{{0, 0}, {1, 0}, {2, 0}});
  const Hin hin = Hin::build(std::move(groups), std::move(links));
  const Hin shuffled = shuffle_link_group(hin, {"r", 9, 10.0});
  CHECK(edge_jaccard(hin.relation("r"), shuffled.relation("r")) == 1.0);
}

TEST_CASE("determinism under a fixed seed") {
  const Hin hin = multi_membership_hin(11);
  const Hin a = shuffle_link_group(hin, {"member", 42, 10.0});
  const Hin b = shuffle_link_group(hin, {"member", 42, 10.0});
  const auto ea = a.relation("member").edges();
  const auto eb = b.relation("member").edges();
  CHECK(std::vector<Edge>(ea.begin(), ea.end()) == std::vector<Edge>(eb.begin(), eb.end()));

  const Hin c = shuffle_link_group(hin, {"member", 43, 10.0});
  const auto ec = c.relation("member").edges();
  CHECK(std::vector<Edge>(ea.begin(), ea.end()) != std::vector<Edge>(ec.begin(), ec.end()));
}

TEST_CASE("errors: unknown relation, too few edges, bad swap factor") {
  const Hin hin = testsupport::toy_hin();
  CHECK_THROWS_AS(shuffle_link_group(hin, {"nope", 1, 10.0}), Error);
  CHECK_THROWS_AS(shuffle_link_group(hin, {"likes", 1, 0.0}), Error);

  std::vector<ObjectGroup> groups;
  groups.emplace_back("s", std::vector<std::string>{"a"});
  groups.emplace_back("t", std::vector<std::string>{"x"});
  std::vector<LinkGroup> links;
  links.emplace_back("r", "s", "t", std::vector<Edge>{{0, 0}});
  const Hin tiny = Hin::build(std::move(groups), std::move(links));
  CHECK_THROWS_AS(shuffle_link_group(tiny, {"r", 1, 10.0}), Error);
}

TEST_CASE("shuffling the fixture location relation moves most edges") {
  const Hin hin = parse_movielens_100k(testsupport::ml100k_dir());
  const Hin shuffled = shuffle_link_group(hin, {"Lo", 1, 10.0});
  const auto before = degree_profile(hin, "Lo");
  CHECK(degree_profile(shuffled, "Lo") == before);
  CHECK(edge_jaccard(hin.relation("Lo"), shuffled.relation("Lo")) < 0.5);
}

TEST_CASE("replicate stream: derived seeds, determinism, distinctness") {
  const Hin hin = multi_membership_hin(21);
  const auto first = replicate_stream(hin, "member", 1000, 5, 10.0, 2);
  REQUIRE(first.size() == 5);

  // same master seed: identical sequence
  const auto second = replicate_stream(hin, "member", 1000, 5, 10.0, 1);
  for (std::size_t r = 0; r < 5; ++r) {
    const auto ea = first[r].relation("member").edges();
    const auto eb = second[r].relation("member").edges();
    CHECK(std::vector<Edge>(ea.begin(), ea.end()) == std::vector<Edge>(eb.begin(), eb.end()));
  }

  // replicate 0 equals a direct shuffle with the derived seed
  const Hin direct =
      shuffle_link_group(hin, {"member", derive_seed(1000, "replicate", 0), 10.0});
  const auto e0 = first[0].relation("member").edges();
  const auto ed = direct.relation("member").edges();
  CHECK(std::vector<Edge>(e0.begin(), e0.end()) == std::vector<Edge>(ed.begin(), ed.end()));

  // pairwise distinct edge sets
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) {
      CHECK(edge_jaccard(first[a].relation("member"), first[b].relation("member")) < 1.0);
    }
  }
}

TEST_CASE("degree preservation across a replicate stream of the fixture") {
  const Hin hin = parse_movielens_100k(testsupport::ml100k_dir());
  const auto before = degree_profile(hin, "Lo");
  const auto reps = replicate_stream(hin, "Lo", 7, 10, 10.0, 2);
  for (const Hin& rep : reps) {
    CHECK(degree_profile(rep, "Lo") == before);
    CHECK(simple(rep.relation("Lo")));
  }
}
