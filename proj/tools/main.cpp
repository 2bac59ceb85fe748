#include <iostream>

#include "sqfree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sqfree::run_cli(args, std::cout, std::cerr);
}
