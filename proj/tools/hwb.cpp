#include <iostream>
#include <string>
#include <vector>

#include "hwb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hwb::cli::dispatch(args, std::cout, std::cerr);
}
