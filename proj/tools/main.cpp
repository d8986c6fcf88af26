#include <iostream>
#include <string>
#include <vector>

#include "mkh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mkh::cli::run(args, std::cout, std::cerr);
}
