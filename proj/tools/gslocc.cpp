#include <iostream>
#include <string>
#include <vector>

#include "gslocc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gslocc::cli::run(args, std::cout, std::cerr);
}
