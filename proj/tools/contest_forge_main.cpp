#include <vector>
#include <string>

#include "cforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cforge::cli::cmd_dispatch(args);
}
