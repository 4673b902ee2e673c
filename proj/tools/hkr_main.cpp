#include <iostream>

#include "hkr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hkr::run(args, std::cout, std::cerr);
}
