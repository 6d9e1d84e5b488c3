#include "hinwalk/cli.hpp"

int main(int argc, char** argv) {
  return hinwalk::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
