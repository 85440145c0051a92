#include <iostream>
#include <string>
#include <vector>

#include "rulingsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rulingsim::run_cli(args, std::cout, std::cerr);
}
