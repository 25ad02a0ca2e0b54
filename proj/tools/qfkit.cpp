#include <iostream>

#include "qfkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qfkit::run_cli(args, std::cout, std::cerr);
}
