#include <iostream>
#include <string>
#include <vector>

#include "dlc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dlc::run_cli(args, std::cout, std::cerr);
}
