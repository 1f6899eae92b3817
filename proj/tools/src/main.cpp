#include <iostream>
#include <string>
#include <vector>

#include "bnqn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bnqn::run_command(args, std::cout, std::cerr);
}
