#include <iostream>
#include <string>
#include <vector>

#include "cosim/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return cosim::cli::run(std::move(args), std::cout, std::cerr);
}
