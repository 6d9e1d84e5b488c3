#include "hinwalk/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_set>

#include "hinwalk/parallel.hpp"
#include "hinwalk/rng.hpp"

namespace hinwalk {

namespace {

std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.src) << 32) | e.dst;
}

}  // namespace

Hin shuffle_link_group(const Hin& hin, const ShuffleConfig& config) {
  if (config.swap_factor <= 0.0) throw Error("swap_factor must be positive");
  const LinkGroup& original = hin.relation(config.relation);
  if (original.size() < 2) {
    throw Error("relation '" + config.relation + "' has fewer than 2 edges");
  }

  std::vector<Edge> edges(original.edges().begin(), original.edges().end());
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const Edge& e : edges) present.insert(edge_key(e));

  Rng rng(config.seed);
  const auto attempts =
      static_cast<std::uint64_t>(std::llround(config.swap_factor * double(edges.size())));
  const std::uint64_t m = edges.size();
  for (std::uint64_t a = 0; a < attempts; ++a) {
    const std::uint64_t i = bounded(rng, m);
    const std::uint64_t j = bounded(rng, m);
    if (i == j) continue;
    Edge& e1 = edges[i];
    Edge& e2 = edges[j];
    const Edge p1{e1.src, e2.dst};
    const Edge p2{e2.src, e1.dst};
    // Rejecting proposals that collide with existing edges keeps the graph
    // simple; shared endpoints reduce to no-ops and are rejected the same way.
    if (present.count(edge_key(p1)) || present.count(edge_key(p2))) continue;
    present.erase(edge_key(e1));
    present.erase(edge_key(e2));
    present.insert(edge_key(p1));
    present.insert(edge_key(p2));
    e1 = p1;
    e2 = p2;
  }

  return hin.with_replaced_relation(LinkGroup(original.name(), original.source_group(),
                                              original.target_group(), std::move(edges)));
}

std::vector<Hin> replicate_stream(const Hin& hin, std::string_view relation,
                                  std::uint64_t master_seed, std::uint32_t count,
                                  double swap_factor, int jobs) {
  if (count < 1) throw Error("replicate count must be at least 1");
  std::vector<std::optional<Hin>> slots(count);
  parallel_for(count, jobs, [&](std::size_t r) {
    ShuffleConfig cfg;
    cfg.relation = std::string(relation);
    cfg.seed = derive_seed(master_seed, "replicate", r);
    cfg.swap_factor = swap_factor;
    slots[r] = shuffle_link_group(hin, cfg);
  });
  std::vector<Hin> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double edge_jaccard(const LinkGroup& a, const LinkGroup& b) {
  std::size_t inter = 0;
  auto ea = a.edges();
  auto eb = b.edges();
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i] < eb[j]) {
      ++i;
    } else if (eb[j] < ea[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = ea.size() + eb.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace hinwalk
