#pragma once

#include <string>
#include <vector>

namespace hinwalk {

/// Batch front end. args excludes the program name. Returns 0 on success,
/// 1 on usage errors, 2 on data errors. Every output file gets a sibling
/// <output>.manifest.json recording the resolved invocation; replaying that
/// argv reproduces the output byte for byte.
int run_cli(std::vector<std::string> args);

}  // namespace hinwalk
