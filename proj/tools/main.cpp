#include <iostream>
#include <string>
#include <vector>

#include "lp2_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lp2::cli::dispatch(args, std::cout, std::cerr);
}
