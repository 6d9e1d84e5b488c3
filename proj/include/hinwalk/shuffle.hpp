#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hinwalk/hin.hpp"

namespace hinwalk {

struct ShuffleConfig {
  std::string relation;
  std::uint64_t seed = 0;
  /// Attempted double-edge swaps = swap_factor * |edges|.
  double swap_factor = 10.0;
};

/// Degree-preserving randomization of one link group by repeated double-edge
/// swaps: pick two edges (a->x, b->y), propose (a->y, b->x), reject whenever a
/// proposed edge already exists. Per-node in/out degrees and simplicity are
/// preserved exactly; every other link group is shared untouched.
Hin shuffle_link_group(const Hin& hin, const ShuffleConfig& config);

/// count independent shuffles with per-replicate seeds
/// derive_seed(master_seed, "replicate", index).
std::vector<Hin> replicate_stream(const Hin& hin, std::string_view relation,
                                  std::uint64_t master_seed, std::uint32_t count,
                                  double swap_factor = 10.0, int jobs = 1);

/// |intersection| / |union| of two edge sets.
double edge_jaccard(const LinkGroup& a, const LinkGroup& b);

}  // namespace hinwalk
