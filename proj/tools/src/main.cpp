#include <iostream>

#include "trimod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trimod::cli::execute(args, std::cout, std::cerr);
}
