#include "hinwalk/diversity.hpp"

#include <cmath>
#include <limits>

#include "hinwalk/csv.hpp"
#include "hinwalk/parallel.hpp"

namespace hinwalk {

namespace {

constexpr double kMassEps = 1e-15;

// Entropy of the renormalized surviving mass, or nullopt if nothing survives.
std::optional<double> entropy_or_empty(const Pmf& pmf) {
  const double total = pmf.surviving_mass();
  if (total <= kMassEps) return std::nullopt;
  double h = 0.0;
  for (double p : pmf.mass) {
    if (p <= 0.0) continue;
    const double q = p / total;
    h -= q * std::log2(q);
  }
  return h < 0.0 ? 0.0 : h;  // clamp -0 from rounding
}

}  // namespace

double shannon_entropy(const Pmf& pmf) {
  if (auto h = entropy_or_empty(pmf)) return *h;
  throw DegenerateDistribution("entropy of a distribution with no surviving mass");
}

double perplexity(const Pmf& pmf) { return std::exp2(shannon_entropy(pmf)); }

DiversityReport mean_individual_diversity(const Hin& hin, const MetaPath& path, int jobs) {
  const OperatorChain chain(hin, path);
  const std::uint32_t n = chain.source_count();
  if (n == 0) throw Error("source group '" + path.source_group + "' is empty");

  // NaN marks an excluded (dangling) source.
  std::vector<double> entropies(n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(n, jobs, [&](std::size_t s) {
    const Pmf pmf = chain.from_source(static_cast<NodeIndex>(s));
    if (auto h = entropy_or_empty(pmf)) entropies[s] = *h;
  });

  double sum = 0.0;
  std::uint32_t contributing = 0;
  std::uint32_t excluded = 0;
  for (double h : entropies) {
    if (std::isnan(h)) {
      ++excluded;
    } else {
      sum += h;
      ++contributing;
    }
  }
  if (contributing == 0) {
    throw DegenerateDistribution("mean individual diversity: every source is dangling");
  }
  DiversityReport report;
  report.meta_path = path;
  report.kind = DiversityKind::mean_individual;
  // Geometric mean of perplexities == 2^(mean entropy).
  report.value = std::exp2(sum / static_cast<double>(contributing));
  report.excluded_sources = excluded;
  return report;
}

DiversityReport collective_diversity(const Hin& hin, const MetaPath& path) {
  DiversityReport report;
  report.meta_path = path;
  report.kind = DiversityKind::collective;
  report.value = perplexity(collective_distribution(hin, path));
  report.excluded_sources = 0;
  return report;
}

MosaicTable diversity_mosaic(const Hin& hin, const MosaicSpec& spec) {
  MosaicTable table;
  for (const auto& source : spec.sources) {
    for (const std::string& middle : spec.middles) {
      for (const std::string& target : spec.targets) {
        std::vector<MetaPathStep> steps;
        if (source) steps.push_back({*source, true});
        steps.push_back({middle, false});
        steps.push_back({target, false});
        MetaPath path;
        try {
          path = validate_meta_path(hin, steps);
        } catch (const Error& e) {
          table.warnings.push_back(e.what());
          continue;
        }
        try {
          const DiversityReport r = mean_individual_diversity(hin, path, spec.jobs);
          table.cells.push_back({path.source_group, middle, path.target_group, r.value,
                                 r.excluded_sources});
        } catch (const DegenerateDistribution& e) {
          table.warnings.push_back(to_string(path) + ": " + e.what());
        }
      }
    }
  }
  return table;
}

void write_mosaic_csv(const MosaicTable& table, std::ostream& out) {
  csv::write_row(out, {"source_group", "middle_relation", "target_group", "measure", "value",
                       "excluded_sources"});
  for (const MosaicCell& c : table.cells) {
    csv::write_row(out, {c.source_group, c.middle_relation, c.target_group, "mean_individual",
                         csv::fmt(c.value), std::to_string(c.excluded_sources)});
  }
}

}  // namespace hinwalk
