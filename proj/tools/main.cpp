#include <string>
#include <vector>

#include "bostat/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return bostat::run_cli(args);
}
