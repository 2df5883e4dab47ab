#include <iostream>

#include "orelp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orelp::cli::run(args, std::cout, std::cerr);
}
