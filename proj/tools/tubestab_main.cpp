#include <iostream>
#include <string>
#include <vector>

#include "tubestab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tubestab::cli_run(args, std::cout, std::cerr);
}
