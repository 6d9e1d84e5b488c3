#include "hinwalk/walk.hpp"

#include <algorithm>
#include <numeric>

#include "hinwalk/csv.hpp"
#include "hinwalk/parallel.hpp"

namespace hinwalk {

double TransitionOperator::probability(NodeIndex s, NodeIndex t) const {
  auto row = csr->row(s);
  if (row.empty()) return 0.0;
  if (!std::binary_search(row.begin(), row.end(), t)) return 0.0;
  return 1.0 / static_cast<double>(row.size());
}

TransitionOperator transition_operator(const Hin& hin, std::string_view relation,
                                       bool inverted) {
  RelationView v = hin.view(relation, inverted);
  TransitionOperator op;
  op.relation = v.relation();
  op.inverted = inverted;
  op.source_group = v.source_group();
  op.target_group = v.target_group();
  op.rows = hin.group(v.source_group()).size();
  op.cols = hin.group(v.target_group()).size();
  op.csr = &v.csr();
  return op;
}

double Pmf::surviving_mass() const {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

OperatorChain::OperatorChain(const Hin& hin, const MetaPath& path) {
  ops_.reserve(path.steps.size());
  for (const MetaPathStep& s : path.steps) {
    ops_.push_back(transition_operator(hin, s.relation, s.inverted));
  }
}

namespace {

// out[t] += in[s] / outdeg(s) over s's neighbors; dangling rows leak to lost.
void apply_step(const TransitionOperator& op, const std::vector<double>& in,
                std::vector<double>& out, double& lost) {
  out.assign(op.cols, 0.0);
  for (std::uint32_t s = 0; s < op.rows; ++s) {
    const double m = in[s];
    if (m == 0.0) continue;
    const auto row = op.csr->row(s);
    if (row.empty()) {
      lost += m;
      continue;
    }
    const double w = m / static_cast<double>(row.size());
    for (NodeIndex t : row) out[t] += w;
  }
}

}  // namespace

Pmf OperatorChain::from_start(std::vector<double> start, double lost) const {
  std::vector<double> cur = std::move(start);
  std::vector<double> next;
  for (const TransitionOperator& op : ops_) {
    apply_step(op, cur, next, lost);
    std::swap(cur, next);
  }
  Pmf pmf;
  pmf.group = target_group();
  pmf.mass = std::move(cur);
  pmf.lost_mass = lost;
  return pmf;
}

Pmf OperatorChain::from_source(NodeIndex source) const {
  if (source >= source_count()) {
    throw Error("source index " + std::to_string(source) + " not in group '" +
                source_group() + "'");
  }
  std::vector<double> start(source_count(), 0.0);
  start[source] = 1.0;
  return from_start(std::move(start));
}

Pmf OperatorChain::from_uniform() const {
  const std::uint32_t n = source_count();
  if (n == 0) throw Error("source group '" + source_group() + "' is empty");
  std::vector<double> start(n, 1.0 / static_cast<double>(n));
  return from_start(std::move(start));
}

Pmf source_distribution(const Hin& hin, const MetaPath& path, NodeIndex source) {
  return OperatorChain(hin, path).from_source(source);
}

Pmf source_distribution(const Hin& hin, const MetaPath& path, std::string_view source_label) {
  const NodeIndex s = hin.group(path.source_group).index_of(source_label);
  return source_distribution(hin, path, s);
}

Pmf collective_distribution(const Hin& hin, const MetaPath& path) {
  return OperatorChain(hin, path).from_uniform();
}

std::vector<Pmf> all_source_distributions(const Hin& hin, const MetaPath& path, int jobs) {
  const OperatorChain chain(hin, path);
  std::vector<Pmf> out(chain.source_count());
  parallel_for(chain.source_count(), jobs,
               [&](std::size_t s) { out[s] = chain.from_source(static_cast<NodeIndex>(s)); });
  return out;
}

void dump_pmf_csv(const Hin& hin, const Pmf& pmf, std::ostream& out) {
  const ObjectGroup& g = hin.group(pmf.group);
  csv::write_row(out, {"node", "probability"});
  for (NodeIndex i = 0; i < pmf.mass.size(); ++i) {
    csv::write_row(out, {g.label(i), csv::fmt(pmf.mass[i])});
  }
}

}  // namespace hinwalk
