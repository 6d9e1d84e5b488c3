#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hinwalk/hin.hpp"
#include "hinwalk/meta_path.hpp"

namespace hinwalk {

/// Row-stochastic step operator for one relation face: row s distributes its
/// mass uniformly over s's out-neighbors; a row with no out-edges is dangling
/// and absorbs its mass instead of renormalizing.
struct TransitionOperator {
  std::string relation;
  bool inverted = false;
  std::string source_group;
  std::string target_group;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  const Csr* csr = nullptr;

  std::uint32_t out_degree(NodeIndex s) const { return csr->degree(s); }
  bool dangling(NodeIndex s) const { return csr->degree(s) == 0; }
  /// Entry (s, t): 1/outdeg(s) if the edge exists, else 0.
  double probability(NodeIndex s, NodeIndex t) const;
};

TransitionOperator transition_operator(const Hin& hin, std::string_view relation,
                                       bool inverted = false);

/// Probability mass over one object group's nodes. Mass absorbed by dangling
/// rows along the way is tracked in lost_mass; sum(mass) + lost_mass == 1 for
/// any distribution produced by a walk from a proper start.
struct Pmf {
  std::string group;
  std::vector<double> mass;
  double lost_mass = 0.0;

  double surviving_mass() const;
};

/// A validated meta-path's operators, built once and applied to many starts.
/// Holds views into the Hin; must not outlive it.
class OperatorChain {
 public:
  OperatorChain(const Hin& hin, const MetaPath& path);

  std::uint32_t source_count() const { return ops_.front().rows; }
  std::uint32_t target_count() const { return ops_.back().cols; }
  const std::string& source_group() const { return ops_.front().source_group; }
  const std::string& target_group() const { return ops_.back().target_group; }
  const std::vector<TransitionOperator>& operators() const { return ops_; }

  Pmf from_start(std::vector<double> start, double lost = 0.0) const;
  Pmf from_source(NodeIndex source) const;
  Pmf from_uniform() const;

 private:
  std::vector<TransitionOperator> ops_;
};

/// p over the target group for a walk started at one source node.
Pmf source_distribution(const Hin& hin, const MetaPath& path, NodeIndex source);
Pmf source_distribution(const Hin& hin, const MetaPath& path, std::string_view source_label);

/// p over the target group for a walk started uniformly at random in the
/// source group.
Pmf collective_distribution(const Hin& hin, const MetaPath& path);

/// One Pmf per source node, indexed by source. Pure per-row computation;
/// results are independent of the worker count.
std::vector<Pmf> all_source_distributions(const Hin& hin, const MetaPath& path, int jobs = 1);

/// Debug dump: node label, probability.
void dump_pmf_csv(const Hin& hin, const Pmf& pmf, std::ostream& out);

}  // namespace hinwalk
