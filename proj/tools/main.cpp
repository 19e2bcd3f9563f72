#include <iostream>
#include <string>
#include <vector>

#include "lpmw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lpmw::cli::run(args, std::cout, std::cerr);
}
