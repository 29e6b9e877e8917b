#include <iostream>
#include <string>
#include <vector>

#include "bitfrac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bitfrac::run_cli(args, std::cout, std::cerr);
}
