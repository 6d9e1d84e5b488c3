#pragma once

// Brute-force walk enumeration, independent of the matrix-chain engine: the
// probability of every path is followed recursively over raw edge lists.

#include <map>
#include <utility>
#include <vector>

#include "hinwalk/hin.hpp"
#include "hinwalk/meta_path.hpp"
#include "hinwalk/rng.hpp"
#include "hinwalk/walk.hpp"

namespace testsupport {

// Adjacency lists rebuilt from the edge sets alone (no CSR reuse).
class OracleGraph {
 public:
  OracleGraph(const hinwalk::Hin& hin, const hinwalk::MetaPath& path) {
    for (const auto& step : path.steps) {
      const hinwalk::LinkGroup& lg = hin.relation(step.relation);
      const std::uint32_t rows =
          hin.group(step.inverted ? lg.target_group() : lg.source_group()).size();
      std::vector<std::vector<hinwalk::NodeIndex>> adj(rows);
      for (const hinwalk::Edge& e : lg.edges()) {
        if (step.inverted) {
          adj[e.dst].push_back(e.src);
        } else {
          adj[e.src].push_back(e.dst);
        }
      }
      steps_.push_back(std::move(adj));
    }
    target_count_ = hin.group(path.target_group).size();
    target_group_ = path.target_group;
  }

  hinwalk::Pmf from_source(hinwalk::NodeIndex s) const {
    hinwalk::Pmf pmf;
    pmf.group = target_group_;
    pmf.mass.assign(target_count_, 0.0);
    walk(0, s, 1.0, pmf);
    return pmf;
  }

  hinwalk::Pmf from_uniform(std::uint32_t source_count) const {
    hinwalk::Pmf pmf;
    pmf.group = target_group_;
    pmf.mass.assign(target_count_, 0.0);
    const double w = 1.0 / static_cast<double>(source_count);
    for (hinwalk::NodeIndex s = 0; s < source_count; ++s) walk(0, s, w, pmf);
    return pmf;
  }

 private:
  void walk(std::size_t depth, hinwalk::NodeIndex node, double prob, hinwalk::Pmf& pmf) const {
    if (depth == steps_.size()) {
      pmf.mass[node] += prob;
      return;
    }
    const auto& nbrs = steps_[depth][node];
    if (nbrs.empty()) {
      pmf.lost_mass += prob;
      return;
    }
    const double w = prob / static_cast<double>(nbrs.size());
    for (hinwalk::NodeIndex next : nbrs) walk(depth + 1, next, w, pmf);
  }

  std::vector<std::vector<std::vector<hinwalk::NodeIndex>>> steps_;
  std::uint32_t target_count_ = 0;
  std::string target_group_;
};

// Random small networks plus a random valid meta-path over their schema.
struct RandomInstance {
  hinwalk::Hin hin;
  hinwalk::MetaPath path;
};

inline RandomInstance random_instance(hinwalk::Rng& rng, std::uint32_t max_nodes = 20,
                                      std::size_t max_steps = 4) {
  using namespace hinwalk;
  const std::size_t n_groups = 2 + bounded(rng, 3);
  std::vector<ObjectGroup> groups;
  std::vector<std::uint32_t> sizes;
  std::uint32_t budget = max_nodes;
  for (std::size_t g = 0; g < n_groups; ++g) {
    const std::uint32_t remaining_groups = static_cast<std::uint32_t>(n_groups - g);
    const std::uint32_t max_here = budget - (remaining_groups - 1);
    const std::uint32_t size = 1 + static_cast<std::uint32_t>(
                                       bounded(rng, std::min<std::uint32_t>(7, max_here)));
    sizes.push_back(size);
    budget -= size;
    std::vector<std::string> labels;
    for (std::uint32_t i = 0; i < size; ++i) {
      labels.push_back("g" + std::to_string(g) + "n" + std::to_string(i));
    }
    groups.emplace_back("g" + std::to_string(g), std::move(labels));
  }

  const std::size_t n_rels = 2 + bounded(rng, 4);
  std::vector<LinkGroup> links;
  for (std::size_t r = 0; r < n_rels; ++r) {
    const auto sg = static_cast<std::size_t>(bounded(rng, n_groups));
    const auto tg = static_cast<std::size_t>(bounded(rng, n_groups));
    std::vector<Edge> edges;
    for (std::uint32_t s = 0; s < sizes[sg]; ++s) {
      // some rows stay empty on purpose: dangling sources
      const auto degree = bounded(rng, std::min<std::uint32_t>(sizes[tg], 4) + 1);
      for (std::uint64_t d = 0; d < degree; ++d) {
        edges.push_back({s, static_cast<NodeIndex>(bounded(rng, sizes[tg]))});
      }
    }
    links.emplace_back("r" + std::to_string(r), "g" + std::to_string(sg),
                       "g" + std::to_string(tg), std::move(edges));
  }
  Hin hin = Hin::build(std::move(groups), std::move(links), "random");

  // Random composing step sequence: walk the schema from a random start.
  const std::size_t length = 1 + bounded(rng, max_steps);
  std::vector<MetaPathStep> steps;
  std::string at;
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<MetaPathStep> options;
    for (const std::string& name : hin.relation_names()) {
      const LinkGroup& lg = hin.relation(name);
      if (at.empty() || lg.source_group() == at) options.push_back({name, false});
      if (at.empty() || lg.target_group() == at) options.push_back({name, true});
    }
    if (options.empty()) break;
    const auto& pick = options[bounded(rng, options.size())];
    steps.push_back(pick);
    const LinkGroup& lg = hin.relation(pick.relation);
    at = pick.inverted ? lg.source_group() : lg.target_group();
  }
  MetaPath path = validate_meta_path(hin, std::move(steps));
  return {std::move(hin), std::move(path)};
}

}  // namespace testsupport
