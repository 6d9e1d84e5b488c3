// Writes the bundled synthetic datasets, for demos and for tests.
#include <cstdint>
#include <iostream>
#include <string>

#include "hinwalk/fixtures.hpp"

int main(int argc, char** argv) {
  std::string kind = "ml100k";
  std::string dir = "fixture";
  std::uint64_t seed = 1234;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--kind" && i + 1 < argc) {
      kind = argv[++i];
    } else if (arg == "--dir" && i + 1 < argc) {
      dir = argv[++i];
    } else if (arg == "--seed" && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    } else {
      std::cerr << "usage: make-fixtures [--kind ml100k|dm] [--dir PATH] [--seed N]\n";
      return 1;
    }
  }
  if (kind == "ml100k") {
    hinwalk::fixtures::write_ml100k(dir, seed);
  } else if (kind == "dm") {
    hinwalk::fixtures::write_dm(dir, seed);
  } else {
    std::cerr << "unknown fixture kind '" << kind << "'\n";
    return 1;
  }
  std::cerr << "wrote " << kind << " fixture to " << dir << "\n";
  return 0;
}
